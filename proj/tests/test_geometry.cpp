#include <doctest.h>

#include "mirrorvt/geometry.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace mirrorvt;
using testing::vec;

TEST_CASE("grad_phi closed forms") {
  const auto ball = MirrorMap::ball_log(2);
  CHECK(grad_phi(ball, vec({0, 0})).norm() == 0.0);
  CHECK((grad_phi(ball, vec({0.5, 0})) - vec({1, 0})).norm() < 1e-15);

  const auto simplex = MirrorMap::entropic_simplex(3);
  const Vector y = grad_phi(simplex, vec({1.0 / 3, 1.0 / 3, 1.0 / 3}));
  CHECK(y.size() == 2);
  CHECK(y.norm() < 1e-15);
}

TEST_CASE("grad_phi_star closed forms and round trips") {
  const auto ball = MirrorMap::ball_log(2);
  CHECK(grad_phi_star(ball, vec({0, 0})).norm() == 0.0);
  CHECK((grad_phi_star(ball, vec({1, 0})) - vec({0.5, 0})).norm() < 1e-15);
  CHECK((grad_phi(ball, vec({0.5, 0})) - vec({1, 0})).norm() < 1e-15);

  const auto simplex = MirrorMap::entropic_simplex(3);
  const Vector x = grad_phi_star(simplex, vec({0, 0}));
  CHECK((x - Vector::Constant(3, 1.0 / 3)).norm() < 1e-15);
  CHECK(grad_phi(simplex, x).norm() < 1e-14);

  // Large dual coordinates stay finite and interior.
  const Vector far = grad_phi_star(simplex, vec({700, -700}));
  CHECK(far.allFinite());
  CHECK(std::abs(far.sum() - 1.0) < 1e-15);
}

TEST_CASE("inv_hessian_apply closed forms") {
  const auto ball = MirrorMap::ball_log(2);
  CHECK((inv_hessian_apply(ball, vec({0, 0}), vec({3, 4})) - vec({3, 4})).norm() == 0.0);

  // (1 - r)(I - x x^T / r) at x = [0.5, 0] is diag(0.25, 0.5).
  const Vector got = inv_hessian_apply(ball, vec({0.5, 0}), vec({1, 1}));
  CHECK((got - vec({0.25, 0.5})).norm() < 1e-15);
  // Multiply back with the closed-form Hessian (1/(1-r)) I + x x^T / (r (1-r)^2).
  Eigen::Matrix2d h;
  h << 2.0 + 0.25 / (0.5 * 0.25), 0.0, 0.0, 2.0;
  CHECK((h * got - vec({1, 1})).norm() < 1e-14);

  const auto simplex = MirrorMap::entropic_simplex(3);
  const Vector s = inv_hessian_apply(simplex, Vector::Constant(3, 1.0 / 3), vec({1, 0}));
  CHECK((s - vec({2.0 / 9, -1.0 / 9})).norm() < 1e-15);
  Eigen::Matrix2d hs = Eigen::Matrix2d::Constant(3.0);
  hs.diagonal() += Eigen::Vector2d::Constant(3.0);
  CHECK((hs * s - vec({1, 0})).norm() < 1e-14);
}

TEST_CASE("identity map is the identity") {
  const auto id = MirrorMap::identity(Domain::unit_ball(3));
  const Vector x = vec({0.2, -0.4, 2.0});
  CHECK(grad_phi(id, x) == x);
  CHECK(grad_phi_star(id, x) == x);
  CHECK(inv_hessian_apply(id, x, vec({1, 2, 3})) == vec({1, 2, 3}));
}

TEST_CASE("boundary points are rejected") {
  const auto ball = MirrorMap::ball_log(2);
  CHECK_THROWS_AS(grad_phi(ball, vec({1, 0})), BoundaryError);
  CHECK_THROWS_AS(grad_phi(ball, vec({0.6, 0.9})), BoundaryError);
  CHECK_THROWS_AS(inv_hessian_apply(ball, vec({1.0 - 1e-13, 0}), vec({1, 0})), BoundaryError);

  const auto simplex = MirrorMap::entropic_simplex(3);
  CHECK_THROWS_AS(grad_phi(simplex, vec({0.5, 0.5, 0.0})), BoundaryError);
  CHECK_THROWS_AS(grad_phi(simplex, vec({0.0, 0.5, 0.5})), BoundaryError);
  CHECK_THROWS_AS(grad_phi(simplex, vec({0.2, 0.3})), DimensionError);
}

TEST_CASE("round trip on random interior points") {
  Rng rng(11);
  for (int d : {2, 3, 5}) {
    const auto ball = MirrorMap::ball_log(d);
    const auto simplex = MirrorMap::entropic_simplex(d);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const Vector xb = oracle::random_ball_point(rng, d, 0.999);
      worst = std::max(worst, (grad_phi_star(ball, grad_phi(ball, xb)) - xb).norm());
      const Vector xs = oracle::random_simplex_point(rng, d);
      worst = std::max(worst, (grad_phi_star(simplex, grad_phi(simplex, xs)) - xs).norm());
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("grad_phi matches finite differences of the potential") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ball = MirrorMap::ball_log(3);
    const Vector xb = oracle::random_ball_point(rng, 3, 0.9);
    const Vector fd = oracle::fd_gradient([&](const Vector& x) { return potential(ball, x); }, xb);
    CHECK(oracle::rel_err(grad_phi(ball, xb), fd) < 1e-5);

    const auto simplex = MirrorMap::entropic_simplex(4);
    const Vector xs = oracle::random_simplex_point(rng, 4, 0.02);
    // Differentiate in the chart (first d-1 coordinates); the last follows.
    const auto phi_chart = [&](const Vector& u) {
      Vector full(4);
      full << u, 1.0 - u.sum();
      return potential(simplex, full);
    };
    const Vector fds = oracle::fd_gradient(phi_chart, xs.head(3));
    CHECK(oracle::rel_err(grad_phi(simplex, xs), fds) < 1e-5);
  }
}

TEST_CASE("inverse Hessian and Hessian agree with oracles") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    {
      const auto map = MirrorMap::ball_log(3);
      const Vector x = oracle::random_ball_point(rng, 3, 0.95);
      const Vector v = oracle::random_ball_point(rng, 3, 5.0);
      const Vector w = inv_hessian_apply(map, x, v);
      CHECK(oracle::rel_err(hessian(map, x) * w, v) <= 1e-6);
      const Eigen::MatrixXd fd = oracle::fd_jacobian(
          [&](const Vector& p) { return grad_phi(map, p); }, x, 1e-7);
      CHECK(oracle::rel_err(hessian(map, x), fd) <= 1e-4);
    }
    {
      const auto map = MirrorMap::entropic_simplex(5);
      const Vector x = oracle::random_simplex_point(rng, 5, 0.01);
      const Vector v = oracle::random_ball_point(rng, 4, 5.0);
      const Vector w = inv_hessian_apply(map, x, v);
      CHECK(oracle::rel_err(hessian(map, x) * w, v) <= 1e-6);
      const Eigen::MatrixXd fd = oracle::fd_jacobian(
          [&](const Vector& u) {
            Vector full(5);
            full << u, 1.0 - u.sum();
            return grad_phi(map, full);
          },
          x.head(4), 1e-8);
      CHECK(oracle::rel_err(hessian(map, x), fd) <= 1e-4);
    }
  }
}

TEST_CASE("dual_pullback is the transpose Jacobian of grad_phi_star") {
  Rng rng(14);
  for (const auto& map : {MirrorMap::ball_log(3), MirrorMap::entropic_simplex(4)}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Vector y = oracle::random_ball_point(rng, map.dual_dim(), 2.0);
      const Vector x = grad_phi_star(map, y);
      const Vector g = oracle::random_ball_point(rng, map.domain.dim, 1.0);
      const Eigen::MatrixXd J =
          oracle::fd_jacobian([&](const Vector& p) { return grad_phi_star(map, p); }, y);
      CHECK(oracle::rel_err(dual_pullback(map, x, g), J.transpose() * g) < 1e-6);
    }
  }
}

TEST_CASE("project_ball") {
  CHECK(project_ball(vec({0.3, 0.4})) == vec({0.3, 0.4}));
  CHECK((project_ball(vec({2, 0})) - vec({1, 0})).norm() < 1e-15);
  const Vector p = project_ball(vec({3, 4}));
  CHECK((p - vec({0.6, 0.8})).norm() < 1e-15);
  // The search oracle resolves the angle only to about sqrt(machine epsilon).
  CHECK((p - oracle::ball_projection_search(vec({3, 4}))).norm() < 1e-7);
}

TEST_CASE("project_simplex examples") {
  CHECK(project_simplex(vec({0.5, 0.5})) == vec({0.5, 0.5}));
  CHECK((project_simplex(vec({2, 0})) - vec({1, 0})).norm() < 1e-15);
  CHECK((oracle::simplex_projection_bruteforce(vec({2, 0})) - vec({1, 0})).norm() < 1e-15);
  CHECK((project_simplex(vec({0.4, 0.4, 0.4})) - Vector::Constant(3, 1.0 / 3)).norm() < 1e-15);
  CHECK((project_simplex(vec({0.7, 0.5})) - vec({0.6, 0.4})).norm() < 1e-15);
}

TEST_CASE("project_simplex matches the brute-force QP oracle") {
  Rng rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 5;
    Vector x(d);
    for (int i = 0; i < d; ++i) x[i] = 2.0 * rng.normal();
    const Vector y = project_simplex(x);
    CHECK(y.minCoeff() >= 0.0);
    CHECK(std::abs(y.sum() - 1.0) <= 1e-12);
    CHECK((y - oracle::simplex_projection_bruteforce(x)).norm() <= 1e-8);
  }
}

TEST_CASE("projections are idempotent") {
  Rng rng(16);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 2 + trial % 5;
    Vector x(d);
    for (int i = 0; i < d; ++i) x[i] = 3.0 * rng.normal();
    const Vector b = project_ball(x);
    CHECK(project_ball(b) == b);
    CHECK(b.norm() <= 1.0);
    const Vector s = project_simplex(x);
    CHECK(project_simplex(s) == s);
  }
}

TEST_CASE("contains") {
  CHECK(contains(Domain::unit_ball(2), vec({0.5, 0}), true));
  CHECK_FALSE(contains(Domain::unit_ball(2), vec({1, 0}), true));
  CHECK(contains(Domain::unit_ball(2), vec({1, 0}), false));
  CHECK(contains(Domain::simplex(3), vec({0.2, 0.3, 0.5}), true));
  CHECK_FALSE(contains(Domain::simplex(3), vec({0.0, 0.5, 0.5}), true));
  CHECK(contains(Domain::simplex(3), vec({0.0, 0.5, 0.5}), false));
  CHECK_FALSE(contains(Domain::simplex(3), vec({0.2, 0.3, 0.6}), false));
  CHECK_FALSE(contains(Domain::simplex(3), vec({0.5, 0.5}), false));
}

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "mirrorvt/datagen.hpp"

using namespace mirrorvt;
using testing::vec;

namespace {

GaussianMixtureSpec single(const Vector& mean, double sd) {
  GaussianMixtureSpec spec;
  spec.means = {mean};
  spec.stds = {sd};
  return spec;
}

void check_dirichlet_means(const Vector& alpha, int draws, std::uint64_t seed) {
  Rng rng(seed);
  Vector sum = Vector::Zero(alpha.size());
  for (int n = 0; n < draws; ++n) {
    const Vector x = sample_dirichlet(alpha, rng);
    CHECK(std::abs(x.sum() - 1.0) <= 1e-12);
    CHECK((x.array() >= 0.0).all());
    sum += x;
  }
  const double a0 = alpha.sum();
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    const double mean = alpha[i] / a0;
    const double se = std::sqrt(alpha[i] * (a0 - alpha[i]) / (a0 * a0 * (a0 + 1)) / draws);
    CHECK(std::abs(sum[i] / draws - mean) < 3.0 * se + 1e-12);
  }
}

}  // namespace

TEST_CASE("rng gamma and normal moments") {
  Rng rng(123);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s += z;
    s2 += z * z;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
  for (const double shape : {0.3, 1.0, 5.0, 50.0}) {
    double g = 0.0;
    for (int i = 0; i < n; ++i) g += rng.gamma(shape);
    CHECK(std::abs(g / n - shape) < 4.0 * std::sqrt(shape / n));
  }
}

TEST_CASE("truncated mixture keeps concentrated interior components") {
  Rng rng(1);
  const TargetDraw draw = sample_truncated_gaussian_mixture(single(vec({0, 0}), 0.01), 10, rng);
  CHECK(draw.targets.size() == 10);
  REQUIRE(draw.survivors.size() == 1);
  CHECK(draw.survivors[0] == 10);
}

TEST_CASE("truncated mixture with no survivors is degenerate") {
  Rng rng(1);
  CHECK_THROWS_AS(sample_truncated_gaussian_mixture(single(vec({5, 0}), 0.01), 10, rng),
                  DegenerateError);
}

TEST_CASE("default ball target keeps about half of each component") {
  const auto spec = GaussianMixtureSpec::two_component_ball();
  double kept = 0.0, drawn = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const TargetDraw draw = sample_truncated_gaussian_mixture(spec, 100, rng);
    REQUIRE(draw.survivors.size() == 2);
    CHECK(draw.targets.size() == draw.survivors[0] + draw.survivors[1]);
    for (Eigen::Index i = 0; i < draw.targets.size(); ++i) {
      CHECK(draw.targets.samples.row(i).norm() <= 1.0);
    }
    for (int s : draw.survivors) {
      kept += s;
      drawn += 100;
    }
  }
  CHECK(std::abs(kept / drawn - 0.5) < 0.1);
}

TEST_CASE("mixture spec validation") {
  GaussianMixtureSpec bad = single(vec({0, 0}), -1.0);
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  GaussianMixtureSpec weights = GaussianMixtureSpec::two_component_ball();
  weights.weights = {0.3, 0.3};
  CHECK_THROWS_AS(weights.validate(), ConfigError);
  DirichletMixtureSpec dir;
  dir.alphas = {vec({1, 0, 1})};
  CHECK_THROWS_AS(dir.validate(), ConfigError);
}

TEST_CASE("dirichlet moments") {
  check_dirichlet_means(vec({1, 1, 1}), 100000, 3);
  check_dirichlet_means(vec({50, 1, 1, 1, 1}), 100000, 4);
  check_dirichlet_means(vec({0.4, 2.0, 0.7}), 100000, 5);

  Rng rng(6);
  Vector sum = Vector::Zero(5);
  for (int n = 0; n < 100000; ++n) sum += sample_dirichlet(vec({50, 1, 1, 1, 1}), rng);
  CHECK(sum[0] / 100000 == doctest::Approx(50.0 / 54.0).epsilon(0.01));
}

TEST_CASE("default dirichlet mixture") {
  const auto spec = DirichletMixtureSpec::three_corner_simplex();
  CHECK(spec.dim() == 5);
  Rng a(9), b(9);
  const TargetDraw draw = sample_dirichlet_mixture(spec, 50, a);
  CHECK(draw.targets.size() == 150);
  CHECK(draw.targets.domain == Domain::simplex(5));
  for (Eigen::Index i = 0; i < 150; ++i) {
    CHECK(contains(draw.targets.domain, draw.targets.samples.row(i).transpose(), false));
  }
  // Component order is preserved: the first block sits near the first corner.
  CHECK(draw.targets.samples.topRows(50).col(0).mean() > 0.8);
  CHECK(draw.targets.samples.middleRows(50, 50).col(1).mean() > 0.8);
  CHECK(sample_dirichlet_mixture(spec, 50, b).targets.samples == draw.targets.samples);
}

TEST_CASE("single component mixture reduces to plain draws") {
  DirichletMixtureSpec spec;
  spec.alphas = {vec({2, 3, 4})};
  Rng a(11), b(11);
  const TargetDraw draw = sample_dirichlet_mixture(spec, 4, a);
  for (Eigen::Index i = 0; i < 4; ++i) {
    CHECK(draw.targets.samples.row(i).transpose() == sample_dirichlet(spec.alphas[0], b));
  }
}

TEST_CASE("init_particles") {
  Rng rng(12);
  const Matrix simplex = init_particles(Domain::simplex(5), 50, rng);
  CHECK(simplex.rows() == 50);
  for (Eigen::Index i = 0; i < 50; ++i) CHECK(contains(Domain::simplex(5), simplex.row(i).transpose(), true));

  const Matrix ball = init_particles(Domain::unit_ball(2), 100, rng);
  CHECK(ball.rows() == 100);
  for (Eigen::Index i = 0; i < 100; ++i) CHECK(ball.row(i).norm() <= 0.5);
  CHECK(ball.rowwise().norm().maxCoeff() > 0.4);

  const Matrix none = init_particles(Domain::unit_ball(2), 0, rng);
  CHECK(none.rows() == 0);
  CHECK(none.cols() == 2);
}

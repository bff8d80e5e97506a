#include "mirrorvt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace mirrorvt {
namespace {

constexpr double kBoundaryGuard = 1e-12;
constexpr double kCenterThreshold = 1e-12;
constexpr double kSimplexSumTol = 1e-12;

void check_dim(const MirrorMap& map, Eigen::Index n, const char* what) {
  if (n != map.domain.dim) {
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(map.domain.dim) + ", got " + std::to_string(n));
  }
}

void require_interior(const MirrorMap& map, const VectorRef& x, const char* what) {
  check_dim(map, x.size(), what);
  switch (map.kind) {
    case MirrorKind::BallLog:
      if (!(x.norm() < 1.0 - kBoundaryGuard)) {
        throw BoundaryError(std::string(what) + ": point is not inside the open unit ball");
      }
      break;
    case MirrorKind::EntropicSimplex: {
      const Eigen::Index d = x.size();
      const double last = 1.0 - x.head(d - 1).sum();
      if (!(x.head(d - 1).minCoeff() > kBoundaryGuard) || !(last > kBoundaryGuard)) {
        throw BoundaryError(std::string(what) + ": point is not inside the open simplex");
      }
      break;
    }
    case MirrorKind::Identity:
      break;
  }
}

}  // namespace

std::string to_string(DomainKind kind) {
  return kind == DomainKind::UnitBall ? "ball" : "simplex";
}

std::string to_string(MirrorKind kind) {
  switch (kind) {
    case MirrorKind::BallLog: return "ball-log";
    case MirrorKind::EntropicSimplex: return "entropic";
    case MirrorKind::Identity: return "identity";
  }
  return "unknown";
}

bool contains(const Domain& domain, const VectorRef& x, bool strict) {
  if (x.size() != domain.dim || !x.allFinite()) return false;
  if (domain.kind == DomainKind::UnitBall) {
    const double r = x.norm();
    return strict ? r < 1.0 : r <= 1.0;
  }
  if (std::abs(x.sum() - 1.0) > kSimplexSumTol) return false;
  return strict ? x.minCoeff() > 0.0 : x.minCoeff() >= 0.0;
}

MirrorMap MirrorMap::ball_log(int d) {
  // Hess(phi) >= I everywhere; beta grows without bound towards the sphere.
  return {MirrorKind::BallLog, Domain::unit_ball(d), 1.0,
          std::numeric_limits<double>::infinity()};
}

MirrorMap MirrorMap::entropic_simplex(int d) {
  return {MirrorKind::EntropicSimplex, Domain::simplex(d), 1.0,
          std::numeric_limits<double>::infinity()};
}

MirrorMap MirrorMap::identity(const Domain& domain) {
  return {MirrorKind::Identity, domain, 1.0, 1.0};
}

int MirrorMap::dual_dim() const {
  return kind == MirrorKind::EntropicSimplex ? domain.dim - 1 : domain.dim;
}

MirrorMap default_mirror_map(const Domain& domain) {
  return domain.kind == DomainKind::UnitBall ? MirrorMap::ball_log(domain.dim)
                                             : MirrorMap::entropic_simplex(domain.dim);
}

double potential(const MirrorMap& map, const VectorRef& x) {
  require_interior(map, x, "potential");
  switch (map.kind) {
    case MirrorKind::BallLog: {
      const double r = x.norm();
      return -std::log1p(-r) - r;
    }
    case MirrorKind::EntropicSimplex: {
      const Eigen::Index d = x.size();
      const double last = 1.0 - x.head(d - 1).sum();
      double s = last * std::log(last);
      for (Eigen::Index i = 0; i + 1 < d; ++i) s += x[i] * std::log(x[i]);
      return s;
    }
    case MirrorKind::Identity:
      return 0.5 * x.squaredNorm();
  }
  return 0.0;
}

Vector grad_phi(const MirrorMap& map, const VectorRef& x) {
  require_interior(map, x, "grad_phi");
  switch (map.kind) {
    case MirrorKind::BallLog:
      return x / (1.0 - x.norm());
    case MirrorKind::EntropicSimplex: {
      const Eigen::Index d = x.size();
      const double log_last = std::log(1.0 - x.head(d - 1).sum());
      Vector y(d - 1);
      for (Eigen::Index i = 0; i + 1 < d; ++i) y[i] = std::log(x[i]) - log_last;
      return y;
    }
    case MirrorKind::Identity:
      return x;
  }
  return x;
}

Vector grad_phi_star(const MirrorMap& map, const VectorRef& y) {
  if (y.size() != map.dual_dim()) {
    throw DimensionError("grad_phi_star: dual point has wrong dimension");
  }
  switch (map.kind) {
    case MirrorKind::BallLog:
      return y / (1.0 + y.norm());
    case MirrorKind::EntropicSimplex: {
      // Softmax over (y_1..y_{d-1}, 0); the implicit zero is the last coordinate.
      const Eigen::Index d = map.domain.dim;
      const double shift = std::max(0.0, y.maxCoeff());
      Vector x(d);
      for (Eigen::Index i = 0; i + 1 < d; ++i) x[i] = std::exp(y[i] - shift);
      x[d - 1] = std::exp(-shift);
      x /= x.sum();
      return x;
    }
    case MirrorKind::Identity:
      return y;
  }
  return y;
}

Vector inv_hessian_apply(const MirrorMap& map, const VectorRef& x, const VectorRef& v) {
  require_interior(map, x, "inv_hessian_apply");
  if (v.size() != map.dual_dim()) {
    throw DimensionError("inv_hessian_apply: direction has wrong dimension");
  }
  switch (map.kind) {
    case MirrorKind::BallLog: {
      const double r = x.norm();
      if (r < kCenterThreshold) return v;
      return (1.0 - r) * (v - x * (x.dot(v) / r));
    }
    case MirrorKind::EntropicSimplex: {
      const auto xr = x.head(x.size() - 1);
      return xr.cwiseProduct(v) - xr * xr.dot(v);
    }
    case MirrorKind::Identity:
      return v;
  }
  return v;
}

Eigen::MatrixXd hessian(const MirrorMap& map, const VectorRef& x) {
  require_interior(map, x, "hessian");
  const int n = map.dual_dim();
  switch (map.kind) {
    case MirrorKind::BallLog: {
      const double r = x.norm();
      Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) / (1.0 - r);
      if (r >= kCenterThreshold) h += x * x.transpose() / (r * (1.0 - r) * (1.0 - r));
      return h;
    }
    case MirrorKind::EntropicSimplex: {
      const auto xr = x.head(n);
      const double last = 1.0 - xr.sum();
      Eigen::MatrixXd h = Eigen::MatrixXd::Constant(n, n, 1.0 / last);
      h.diagonal() += xr.cwiseInverse();
      return h;
    }
    case MirrorKind::Identity:
      return Eigen::MatrixXd::Identity(n, n);
  }
  return Eigen::MatrixXd::Identity(n, n);
}

Vector chart_gradient(const MirrorMap& map, const VectorRef& g) {
  check_dim(map, g.size(), "chart_gradient");
  if (map.kind != MirrorKind::EntropicSimplex) return g;
  const Eigen::Index n = g.size() - 1;
  return g.head(n).array() - g[n];
}

Vector dual_pullback(const MirrorMap& map, const VectorRef& x, const VectorRef& g) {
  // J = d x / d y is the inverse Hessian evaluated at x (in chart coordinates).
  return inv_hessian_apply(map, x, chart_gradient(map, g));
}

Vector project_ball(const VectorRef& x) {
  const double r = x.norm();
  if (r <= 1.0) return x;
  Vector y = x / r;
  // Keep the result inside so a second projection is an exact no-op.
  while (y.norm() > 1.0) y *= 1.0 - 0x1.0p-52;
  return y;
}

Vector project_simplex(const VectorRef& x) {
  const Eigen::Index d = x.size();
  if (d == 0) throw DimensionError("project_simplex: empty vector");
  if (x.minCoeff() >= 0.0 && std::abs(x.sum() - 1.0) <= kSimplexSumTol) return x;
  std::vector<double> sorted(x.data(), x.data() + d);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) tau = candidate;
  }
  Vector y = (x.array() - tau).max(0.0);
  // Rounding can leave the sum a few ulps off; fold it into the largest entry.
  Eigen::Index top;
  y.maxCoeff(&top);
  y[top] += 1.0 - y.sum();
  return y;
}

Vector project(const Domain& domain, const VectorRef& x) {
  if (x.size() != domain.dim) throw DimensionError("project: wrong dimension");
  return domain.kind == DomainKind::UnitBall ? project_ball(x) : project_simplex(x);
}

}  // namespace mirrorvt

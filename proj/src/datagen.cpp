#include "mirrorvt/datagen.hpp"

#include <cmath>
#include <iostream>
#include <numeric>

namespace mirrorvt {
namespace {

void check_weights(const std::vector<double>& weights, std::size_t components) {
  if (weights.empty()) return;
  if (weights.size() != components) throw ConfigError("mixture weights: wrong count");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ConfigError("mixture weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ConfigError("mixture weights must sum to 1");
}

}  // namespace

void GaussianMixtureSpec::validate() const {
  if (means.empty() || means.size() != stds.size()) {
    throw ConfigError("gaussian mixture: need one std per mean");
  }
  for (const auto& m : means) {
    if (m.size() != truncation.dim) throw ConfigError("gaussian mixture: mean dimension mismatch");
  }
  for (double s : stds) {
    if (!(s > 0.0)) throw ConfigError("gaussian mixture: stds must be positive");
  }
  check_weights(weights, means.size());
}

GaussianMixtureSpec GaussianMixtureSpec::two_component_ball() {
  GaussianMixtureSpec spec;
  spec.means = {Vector::Zero(2), Vector::Zero(2)};
  spec.means[0] << -1.0, 0.0;
  spec.means[1] << 1.0, 0.0;
  spec.stds = {0.2, 0.2};
  spec.truncation = Domain::unit_ball(2);
  return spec;
}

void DirichletMixtureSpec::validate() const {
  if (alphas.empty()) throw ConfigError("dirichlet mixture: no components");
  for (const auto& a : alphas) {
    if (a.size() != alphas.front().size() || a.size() < 2) {
      throw ConfigError("dirichlet mixture: inconsistent dimensions");
    }
    if (!(a.minCoeff() > 0.0)) throw ConfigError("dirichlet mixture: alphas must be positive");
  }
  check_weights(weights, alphas.size());
}

DirichletMixtureSpec DirichletMixtureSpec::three_corner_simplex() {
  DirichletMixtureSpec spec;
  for (int k = 0; k < 3; ++k) {
    Vector a = Vector::Ones(5);
    a[k] = 50.0;
    spec.alphas.push_back(a);
  }
  return spec;
}

TargetDraw sample_truncated_gaussian_mixture(const GaussianMixtureSpec& spec, int n_per_component,
                                             Rng& rng) {
  spec.validate();
  const int d = spec.truncation.dim;
  std::vector<Vector> kept;
  TargetDraw out;
  for (std::size_t c = 0; c < spec.means.size(); ++c) {
    int survivors = 0;
    for (int s = 0; s < n_per_component; ++s) {
      Vector x(d);
      for (int k = 0; k < d; ++k) x[k] = spec.means[c][k] + spec.stds[c] * rng.normal();
      if (contains(spec.truncation, x, false)) {
        kept.push_back(std::move(x));
        ++survivors;
      }
    }
    out.survivors.push_back(survivors);
  }
  if (kept.empty()) throw DegenerateError("truncated gaussian mixture: no draw fell inside the ball");
  out.targets.domain = spec.truncation;
  out.targets.samples.resize(static_cast<Eigen::Index>(kept.size()), d);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    out.targets.samples.row(static_cast<Eigen::Index>(i)) = kept[i].transpose();
  }
  return out;
}

Vector sample_dirichlet(const VectorRef& alpha, Rng& rng) {
  Vector x(alpha.size());
  for (Eigen::Index i = 0; i < alpha.size(); ++i) x[i] = rng.gamma(alpha[i]);
  x /= x.sum();
  return x;
}

TargetDraw sample_dirichlet_mixture(const DirichletMixtureSpec& spec, int n_per_component,
                                    Rng& rng) {
  spec.validate();
  const int d = spec.dim();
  TargetDraw out;
  out.targets.domain = Domain::simplex(d);
  out.targets.samples.resize(static_cast<Eigen::Index>(spec.alphas.size()) * n_per_component, d);
  Eigen::Index row = 0;
  for (const auto& alpha : spec.alphas) {
    for (int s = 0; s < n_per_component; ++s) {
      out.targets.samples.row(row++) = sample_dirichlet(alpha, rng).transpose();
    }
    out.survivors.push_back(n_per_component);
  }
  return out;
}

Matrix init_particles(const Domain& domain, int n, Rng& rng, const InitSpec& spec) {
  if (n < 0) throw ConfigError("init_particles: negative count");
  if (n == 0) std::cerr << "warning: init_particles called with n = 0\n";
  const int d = domain.dim;
  Matrix points(n, d);
  for (int i = 0; i < n; ++i) {
    if (domain.kind == DomainKind::UnitBall) {
      Vector dir(d);
      double norm = 0.0;
      do {
        for (int k = 0; k < d; ++k) dir[k] = rng.normal();
        norm = dir.norm();
      } while (norm == 0.0);
      const double r = spec.ball_radius * std::pow(rng.uniform(), 1.0 / d);
      points.row(i) = (dir * (r / norm)).transpose();
    } else {
      points.row(i) = sample_dirichlet(Vector::Constant(d, spec.dirichlet_alpha), rng).transpose();
    }
  }
  return points;
}

}  // namespace mirrorvt

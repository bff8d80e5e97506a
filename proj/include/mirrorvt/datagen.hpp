#pragma once

#include <vector>

#include "mirrorvt/functionals.hpp"
#include "mirrorvt/geometry.hpp"
#include "mirrorvt/rng.hpp"

namespace mirrorvt {

struct GaussianMixtureSpec {
  std::vector<Vector> means;
  std::vector<double> stds;
  std::vector<double> weights;  // uniform when empty
  Domain truncation = Domain::unit_ball(2);

  void validate() const;

  /// Two isotropic components at [-1,0] and [1,0] with std 0.2.
  static GaussianMixtureSpec two_component_ball();
};

struct DirichletMixtureSpec {
  std::vector<Vector> alphas;
  std::vector<double> weights;  // uniform when empty

  void validate() const;
  int dim() const { return alphas.empty() ? 0 : static_cast<int>(alphas.front().size()); }

  /// Three five-dimensional components concentrated near the first three corners.
  static DirichletMixtureSpec three_corner_simplex();
};

struct TargetDraw {
  TargetSampleSet targets;
  // Per component: draws kept after truncation (all draws for Dirichlet).
  std::vector<int> survivors;
};

/// n_per_component draws from each component; points outside the unit ball
/// are discarded (no resampling). Throws DegenerateError if nothing survives.
TargetDraw sample_truncated_gaussian_mixture(const GaussianMixtureSpec& spec, int n_per_component,
                                             Rng& rng);

/// Gamma-normalisation draw from Dirichlet(alpha).
Vector sample_dirichlet(const VectorRef& alpha, Rng& rng);

/// n_per_component draws from each component, concatenated in component order.
TargetDraw sample_dirichlet_mixture(const DirichletMixtureSpec& spec, int n_per_component, Rng& rng);

struct InitSpec {
  double ball_radius = 0.5;      // ball: uniform on the centred ball of this radius
  double dirichlet_alpha = 5.0;  // simplex: symmetric Dirichlet concentration
};

/// Initial particles, strictly interior to the domain.
Matrix init_particles(const Domain& domain, int n, Rng& rng, const InitSpec& spec = {});

}  // namespace mirrorvt

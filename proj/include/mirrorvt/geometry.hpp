#pragma once

#include <string>

#include "mirrorvt/types.hpp"

namespace mirrorvt {

enum class DomainKind { UnitBall, Simplex };

/// Constrained primal domain. Simplex points carry all d coordinates; the
/// simplex mirror map works on the first d-1 of them.
struct Domain {
  DomainKind kind = DomainKind::UnitBall;
  int dim = 0;

  static Domain unit_ball(int d) { return {DomainKind::UnitBall, d}; }
  static Domain simplex(int d) { return {DomainKind::Simplex, d}; }

  bool operator==(const Domain&) const = default;
};

std::string to_string(DomainKind kind);

/// Membership test. strict=true asks for the open interior.
bool contains(const Domain& domain, const VectorRef& x, bool strict);

enum class MirrorKind { BallLog, EntropicSimplex, Identity };

/// Mirror map given by a strongly convex potential phi. alpha and beta are
/// the metric bounds alpha*I <= Hess(phi) <= beta*I; they are carried as
/// configuration metadata only.
struct MirrorMap {
  MirrorKind kind = MirrorKind::Identity;
  Domain domain;
  double alpha = 1.0;
  double beta = 1.0;

  static MirrorMap ball_log(int d);
  static MirrorMap entropic_simplex(int d);
  static MirrorMap identity(const Domain& domain);

  /// Dimension of the dual space (d-1 for the entropic simplex map).
  int dual_dim() const;
};

std::string to_string(MirrorKind kind);

/// Natural mirror map of a domain: BallLog for the ball, entropic for the simplex.
MirrorMap default_mirror_map(const Domain& domain);

/// Scalar potential phi(x). Used by derivative checks.
double potential(const MirrorMap& map, const VectorRef& x);

/// y = grad phi(x). Throws BoundaryError unless x is strictly interior.
Vector grad_phi(const MirrorMap& map, const VectorRef& x);

/// x = grad phi*(y), the inverse of grad_phi. Always strictly interior.
Vector grad_phi_star(const MirrorMap& map, const VectorRef& y);

/// (Hess phi(x))^{-1} v in O(d), using the rank-one structure of the Hessian.
Vector inv_hessian_apply(const MirrorMap& map, const VectorRef& x, const VectorRef& v);

/// Closed-form Hessian as a dense matrix (dual_dim x dual_dim). Test support.
Eigen::MatrixXd hessian(const MirrorMap& map, const VectorRef& x);

/// Converts a gradient taken in the d primal coordinates into the gradient
/// of the same function in the map's chart. For the entropic simplex map
/// the chart is (x_1..x_{d-1}) with x_d = 1 - sum, giving g_i - g_d.
Vector chart_gradient(const MirrorMap& map, const VectorRef& g);

/// Pulls a primal gradient g (d coordinates) at x = grad phi*(y) back to the
/// dual space: returns J^T g where J = d grad phi*(y) / dy.
Vector dual_pullback(const MirrorMap& map, const VectorRef& x, const VectorRef& g);

/// Euclidean projection onto the closed unit ball: x / max(1, |x|).
Vector project_ball(const VectorRef& x);

/// Euclidean projection onto the probability simplex (sort-and-threshold).
Vector project_simplex(const VectorRef& x);

/// Dispatches to the projection for the domain.
Vector project(const Domain& domain, const VectorRef& x);

}  // namespace mirrorvt

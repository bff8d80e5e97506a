#pragma once

#include "mirrorvt/types.hpp"

namespace mirrorvt {

/// One-hidden-layer network f(x) = (1/sqrt(n_w)) * sum_i b_i tanh(w_i . x)
/// with fixed output signs b_i in {-1, +1}. The input weights are kept in
/// the Frobenius ball of radius `radius` around the initial weights w0.
///
/// With `bias` set, the last column of w multiplies a constant input 1, so
/// the pre-activation is w_i . (x, 1). Without it f is odd in x.
struct ShallowNet {
  Matrix w;   // n_w x d, or n_w x (d + 1) with bias
  Matrix w0;  // same shape, anchor of the weight ball
  Vector b;   // n_w signs
  double radius = 10.0;
  bool bias = false;

  Eigen::Index width() const { return w.rows(); }
  Eigen::Index dim() const { return w.cols() - (bias ? 1 : 0); }
};

double net_eval(const ShallowNet& net, const VectorRef& x);

/// Evaluates the network on every row of `points`.
Vector net_eval_batch(const ShallowNet& net, const MatrixRef& points);

/// Gradient with respect to the input x.
Vector net_grad_input(const ShallowNet& net, const VectorRef& x);

/// Gradient with respect to the input weights; row i is
/// b_i tanh'(w_i . x) x^T / sqrt(n_w).
Matrix net_grad_weights(const ShallowNet& net, const VectorRef& x);

/// Projection of w onto the Frobenius ball {w : |w - w0|_F <= radius}.
Matrix project_weights(const MatrixRef& w, const MatrixRef& w0, double radius);

}  // namespace mirrorvt

#include "mirrorvt/network.hpp"

#include <cmath>

namespace mirrorvt {
namespace {

void check_input(const ShallowNet& net, Eigen::Index n) {
  if (n != net.dim()) throw DimensionError("network input has wrong dimension");
}

Eigen::ArrayXd activations(const ShallowNet& net, const VectorRef& x) {
  Vector pre = net.w.leftCols(net.dim()) * x;
  if (net.bias) pre += net.w.col(net.dim());
  return pre.array().tanh();
}

}  // namespace

double net_eval(const ShallowNet& net, const VectorRef& x) {
  check_input(net, x.size());
  return net.b.dot(activations(net, x).matrix()) / std::sqrt(static_cast<double>(net.width()));
}

Vector net_eval_batch(const ShallowNet& net, const MatrixRef& points) {
  check_input(net, points.cols());
  Eigen::MatrixXd pre = points * net.w.leftCols(net.dim()).transpose();
  if (net.bias) pre.rowwise() += net.w.col(net.dim()).transpose();
  return pre.array().tanh().matrix() * net.b / std::sqrt(static_cast<double>(net.width()));
}

Vector net_grad_input(const ShallowNet& net, const VectorRef& x) {
  check_input(net, x.size());
  const Eigen::ArrayXd t = activations(net, x);
  const Vector coeff = (net.b.array() * (1.0 - t.square())).matrix();
  return net.w.leftCols(net.dim()).transpose() * coeff /
         std::sqrt(static_cast<double>(net.width()));
}

Matrix net_grad_weights(const ShallowNet& net, const VectorRef& x) {
  check_input(net, x.size());
  const Eigen::ArrayXd t = activations(net, x);
  const Vector coeff = (net.b.array() * (1.0 - t.square())).matrix() /
                       std::sqrt(static_cast<double>(net.width()));
  Matrix g(net.w.rows(), net.w.cols());
  g.leftCols(net.dim()) = coeff * x.transpose();
  if (net.bias) g.col(net.dim()) = coeff;
  return g;
}

Matrix project_weights(const MatrixRef& w, const MatrixRef& w0, double radius) {
  if (w.rows() != w0.rows() || w.cols() != w0.cols()) {
    throw DimensionError("project_weights: shape mismatch");
  }
  const Matrix offset = w - w0;
  const double dist = offset.norm();
  if (dist <= radius) return w;
  return w0 + offset * (radius / dist);
}

}  // namespace mirrorvt

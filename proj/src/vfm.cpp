#include "mirrorvt/vfm.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mirrorvt {

void VfmConfig::validate() const {
  if (width < 1) throw ConfigError("network width must be at least 1");
  if (!(radius > 0.0)) throw ConfigError("weight-ball radius must be positive");
}

ShallowNet net_init(const VfmConfig& cfg, int dim, Rng& rng) {
  cfg.validate();
  const double scale = cfg.init_scale < 0.0 ? 1.0 / std::sqrt(static_cast<double>(dim))
                                            : cfg.init_scale;
  ShallowNet net;
  net.bias = cfg.bias;
  net.w0.resize(cfg.width, dim + (cfg.bias ? 1 : 0));
  for (Eigen::Index i = 0; i < net.w0.rows(); ++i) {
    for (Eigen::Index k = 0; k < net.w0.cols(); ++k) net.w0(i, k) = scale * rng.normal();
  }
  net.b.resize(cfg.width);
  for (Eigen::Index i = 0; i < net.b.size(); ++i) net.b[i] = rng.sign();
  net.w = net.w0;
  net.radius = cfg.radius;
  return net;
}

ShallowNet vfm_run(const MatrixRef& particles, const VariationalFunctional& fun,
                   const ShallowNet& start, Rng& rng, VfmTrace* trace) {
  const Eigen::Index n = particles.rows();
  if (n == 0) throw std::invalid_argument("vfm_run: no particles");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  rng.shuffle(order.begin(), order.end());

  const double step = 1.0 / std::sqrt(static_cast<double>(n));
  ShallowNet net = start;
  Matrix sum = Matrix::Zero(net.w.rows(), net.w.cols());
  if (trace) {
    trace->iterates.clear();
    trace->iterates.push_back(net.w);
    trace->order = order;
  }
  for (const Eigen::Index i : order) {
    sum += net.w;
    const Matrix batch = sample_target_batch(fun, rng);
    const Matrix g = vfm_weight_gradient(fun, net, particles.row(i).transpose(), batch);
    net.w = project_weights(net.w - step * g, net.w0, net.radius);
    if (trace) trace->iterates.push_back(net.w);
  }
  net.w = sum / static_cast<double>(n);
  return net;
}

ShallowNet vfm_run(const MatrixRef& particles, const VariationalFunctional& fun,
                   const VfmConfig& cfg, Rng& rng, VfmTrace* trace) {
  const ShallowNet start = net_init(cfg, static_cast<int>(particles.cols()), rng);
  return vfm_run(particles, fun, start, rng, trace);
}

}  // namespace mirrorvt

#pragma once

#include <vector>

#include "mirrorvt/functionals.hpp"
#include "mirrorvt/network.hpp"
#include "mirrorvt/rng.hpp"

namespace mirrorvt {

struct VfmConfig {
  int width = 256;
  double radius = 10.0;
  // Standard deviation of the Gaussian weight init; negative means 1/sqrt(d).
  double init_scale = -1.0;
  // Start each solve from the previous solution instead of fresh weights.
  bool warm_start = false;
  // Constant input feature; without it the network is an odd function.
  bool bias = false;

  void validate() const;
};

/// Fresh network: w0 ~ N(0, init_scale^2) entrywise, w = w0, random signs b.
ShallowNet net_init(const VfmConfig& cfg, int dim, Rng& rng);

/// Optional record of the SGD iterates w(0) .. w(N) of one solve.
struct VfmTrace {
  std::vector<Matrix> iterates;
  std::vector<Eigen::Index> order;
};

/// One pass of projected SGD over the particles (shuffled once), stepsize
/// N^{-1/2}, returning the network whose weights are the average of the
/// pre-update iterates w(0) .. w(N-1). `start` supplies w, w0, b and radius.
ShallowNet vfm_run(const MatrixRef& particles, const VariationalFunctional& fun,
                   const ShallowNet& start, Rng& rng, VfmTrace* trace = nullptr);

/// Same, starting from net_init(cfg, ...).
ShallowNet vfm_run(const MatrixRef& particles, const VariationalFunctional& fun,
                   const VfmConfig& cfg, Rng& rng, VfmTrace* trace = nullptr);

}  // namespace mirrorvt

#pragma once

#include <memory>
#include <string>

#include "mirrorvt/geometry.hpp"
#include "mirrorvt/network.hpp"
#include "mirrorvt/rng.hpp"

namespace mirrorvt {

enum class FunctionalKind { KL, JS, W1 };

std::string to_string(FunctionalKind kind);
FunctionalKind parse_functional(const std::string& name);

/// Draws representing the target distribution p*.
struct TargetSampleSet {
  Matrix samples;
  Domain domain;

  Eigen::Index size() const { return samples.rows(); }
};

/// F(p) = sup_f { E_p f - F*(f) } with F* estimated from the target samples.
struct VariationalFunctional {
  FunctionalKind kind = FunctionalKind::KL;
  std::shared_ptr<const TargetSampleSet> target;
  int batch_size = 32;
  double js_clamp_eps = 1e-6;
  // Lipschitz budget of the W1 test function; enforced through the weight
  // ball of the network, recorded here for reference.
  double w1_lipschitz_bound = 1.0;

  /// Throws ConfigError when the fields are inconsistent.
  void validate() const;
};

struct ConjugateEstimate {
  double value = 0.0;
  // JS only: number of samples whose log argument hit the clamp.
  int clamped = 0;
};

/// F*(f) from the values of f on target samples.
///   KL: log mean exp f
///   JS: -1/2 mean log max(1 - 2 e^{2f}, eps) - 1/2 log 2
///   W1: mean f
ConjugateEstimate conjugate_value(const VariationalFunctional& fun, const VectorRef& f_on_target);

/// dF*/df(z_j) for each sample in a batch, given the batch values of f.
Vector conjugate_sensitivities(const VariationalFunctional& fun, const VectorRef& f_on_batch);

/// Uniform draw (with replacement) of batch_size target samples.
Matrix sample_target_batch(const VariationalFunctional& fun, Rng& rng);

/// Stochastic weight gradient of F*(f_w) - f_w(particle), with F* estimated
/// on `target_batch`.
Matrix vfm_weight_gradient(const VariationalFunctional& fun, const ShallowNet& net,
                           const VectorRef& particle, const MatrixRef& target_batch);

struct ObjectiveEstimate {
  double value = 0.0;
  int clamped = 0;
};

/// Plug-in estimate (1/N) sum f(x_i) - F*(f) using every target sample.
ObjectiveEstimate objective_estimate(const VariationalFunctional& fun, const ShallowNet& net,
                                     const MatrixRef& particles);

}  // namespace mirrorvt

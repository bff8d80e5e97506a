#include "mirrorvt/functionals.hpp"

#include <cmath>

namespace mirrorvt {

std::string to_string(FunctionalKind kind) {
  switch (kind) {
    case FunctionalKind::KL: return "kl";
    case FunctionalKind::JS: return "js";
    case FunctionalKind::W1: return "w1";
  }
  return "unknown";
}

FunctionalKind parse_functional(const std::string& name) {
  if (name == "kl") return FunctionalKind::KL;
  if (name == "js") return FunctionalKind::JS;
  if (name == "w1") return FunctionalKind::W1;
  throw ConfigError("unknown functional '" + name + "' (expected kl, js or w1)");
}

void VariationalFunctional::validate() const {
  if (!target || target->size() == 0) throw ConfigError("functional has no target samples");
  if (batch_size < 1) throw ConfigError("conjugate batch size must be positive");
  if (batch_size > target->size()) {
    throw ConfigError("conjugate batch size exceeds the number of target samples");
  }
  if (!(js_clamp_eps > 0.0)) throw ConfigError("js_clamp_eps must be positive");
  if (!(w1_lipschitz_bound > 0.0)) throw ConfigError("w1_lipschitz_bound must be positive");
}

ConjugateEstimate conjugate_value(const VariationalFunctional& fun, const VectorRef& f) {
  ConjugateEstimate out;
  const auto n = static_cast<double>(f.size());
  switch (fun.kind) {
    case FunctionalKind::KL: {
      const double shift = f.maxCoeff();
      out.value = shift + std::log((f.array() - shift).exp().sum() / n);
      break;
    }
    case FunctionalKind::JS: {
      double acc = 0.0;
      for (Eigen::Index j = 0; j < f.size(); ++j) {
        double arg = 1.0 - 2.0 * std::exp(2.0 * f[j]);
        if (arg < fun.js_clamp_eps) {
          arg = fun.js_clamp_eps;
          ++out.clamped;
        }
        acc += std::log(arg);
      }
      out.value = -0.5 * acc / n - 0.5 * std::log(2.0);
      break;
    }
    case FunctionalKind::W1:
      out.value = f.mean();
      break;
  }
  return out;
}

Vector conjugate_sensitivities(const VariationalFunctional& fun, const VectorRef& f) {
  const auto n = static_cast<double>(f.size());
  switch (fun.kind) {
    case FunctionalKind::KL: {
      Vector e = (f.array() - f.maxCoeff()).exp();
      return e / e.sum();
    }
    case FunctionalKind::JS: {
      Vector s(f.size());
      for (Eigen::Index j = 0; j < f.size(); ++j) {
        const double e2 = std::exp(2.0 * f[j]);
        s[j] = 2.0 * e2 / std::max(1.0 - 2.0 * e2, fun.js_clamp_eps) / n;
      }
      return s;
    }
    case FunctionalKind::W1:
      return Vector::Constant(f.size(), 1.0 / n);
  }
  return Vector::Zero(f.size());
}

Matrix sample_target_batch(const VariationalFunctional& fun, Rng& rng) {
  const Matrix& samples = fun.target->samples;
  Matrix batch(fun.batch_size, samples.cols());
  for (int j = 0; j < fun.batch_size; ++j) {
    batch.row(j) = samples.row(static_cast<Eigen::Index>(rng.index(samples.rows())));
  }
  return batch;
}

Matrix vfm_weight_gradient(const VariationalFunctional& fun, const ShallowNet& net,
                           const VectorRef& particle, const MatrixRef& target_batch) {
  // Row i of the conjugate term: b_i / sqrt(n_w) * sum_j s_j tanh'(w_i . z_j) z_j^T.
  const Eigen::Index d = net.dim();
  if (target_batch.cols() != d) throw DimensionError("target batch has wrong dimension");
  const double scale = 1.0 / std::sqrt(static_cast<double>(net.width()));
  Eigen::MatrixXd pre = target_batch * net.w.leftCols(d).transpose();  // M x n_w
  if (net.bias) pre.rowwise() += net.w.col(d).transpose();
  const Eigen::ArrayXXd t = pre.array().tanh();
  const Vector f_batch = t.matrix() * net.b * scale;
  const Vector s = conjugate_sensitivities(fun, f_batch);
  // Column j of `weighted` is s_j tanh'(.) over the hidden units for z_j.
  const Eigen::MatrixXd weighted = (1.0 - t.square()).matrix().transpose() * s.asDiagonal();
  Matrix g(net.w.rows(), net.w.cols());
  g.leftCols(d) = weighted * target_batch;
  if (net.bias) g.col(d) = weighted.rowwise().sum();
  g = net.b.asDiagonal() * g * scale;
  g -= net_grad_weights(net, particle);
  return g;
}

ObjectiveEstimate objective_estimate(const VariationalFunctional& fun, const ShallowNet& net,
                                     const MatrixRef& particles) {
  const Vector f_particles = net_eval_batch(net, particles);
  const Vector f_target = net_eval_batch(net, fun.target->samples);
  const ConjugateEstimate conj = conjugate_value(fun, f_target);
  return {f_particles.mean() - conj.value, conj.clamped};
}

}  // namespace mirrorvt

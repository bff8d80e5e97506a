#include "mirrorvt/transport.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace mirrorvt {
namespace {

template <typename PointFn>
ParticleSet map_particles(const ParticleSet& particles, PointFn&& fn) {
  ParticleSet out{Matrix(particles.points.rows(), particles.points.cols()), particles.domain,
                  particles.iteration + 1};
  for (Eigen::Index i = 0; i < particles.points.rows(); ++i) {
    out.points.row(i) = fn(Vector(particles.points.row(i).transpose())).transpose();
  }
  return out;
}

void require_strict(const ParticleSet& particles, const char* what) {
  for (Eigen::Index i = 0; i < particles.points.rows(); ++i) {
    if (!contains(particles.domain, particles.points.row(i).transpose(), true)) {
      throw BoundaryError(std::string(what) + ": particle " + std::to_string(i) +
                          " is not strictly interior");
    }
  }
}

double median_pairwise(const Matrix& points) {
  if (points.rows() < 2) return 1.0;
  try {
    return median_heuristic(points.topRows(1), points.bottomRows(points.rows() - 1));
  } catch (const DegenerateError&) {
    return 1.0;
  }
}

}  // namespace

GradientField network_field(const ShallowNet& net) {
  return [&net](const VectorRef& x) { return net_grad_input(net, x); };
}

ParticleSet vt_step(const ParticleSet& particles, const GradientField& grad, double eta) {
  return map_particles(particles, [&](const Vector& x) -> Vector { return x - eta * grad(x); });
}

ParticleSet vt_step(const ParticleSet& particles, const ShallowNet& net, double eta) {
  return vt_step(particles, network_field(net), eta);
}

ParticleSet projvt_step(const ParticleSet& particles, const GradientField& grad, double eta) {
  const Domain& domain = particles.domain;
  return map_particles(particles, [&](const Vector& x) -> Vector {
    return project(domain, x - eta * grad(x));
  });
}

ParticleSet projvt_step(const ParticleSet& particles, const ShallowNet& net, double eta) {
  return projvt_step(particles, network_field(net), eta);
}

ParticleSet mirrorvt_step(const ParticleSet& particles, const GradientField& grad, double eta,
                          const MirrorMap& map) {
  ParticleSet out = map_particles(particles, [&](const Vector& x) -> Vector {
    const Vector y = grad_phi(map, x);
    const Vector v = inv_hessian_apply(map, x, chart_gradient(map, grad(x)));
    return grad_phi_star(map, y - eta * v);
  });
  if (map.kind != MirrorKind::Identity) require_strict(out, "mirrorvt_step");
  return out;
}

ParticleSet mirrorvt_step(const ParticleSet& particles, const ShallowNet& net, double eta,
                          const MirrorMap& map) {
  return mirrorvt_step(particles, network_field(net), eta, map);
}

Vector svmd_direction(const MirrorMap& map, const Kernel& kernel, const DualScore& score,
                      const VectorRef& y, const MatrixRef& support, const VectorRef& weights) {
  if (support.rows() != weights.size()) {
    throw DimensionError("svmd_direction: one weight per support point required");
  }
  const Vector x = grad_phi_star(map, y);
  Vector u = Vector::Zero(y.size());
  for (Eigen::Index j = 0; j < support.rows(); ++j) {
    const Vector yj = support.row(j).transpose();
    const Vector xj = grad_phi_star(map, yj);
    const double k = kernel(x, xj);
    u += weights[j] * (k * score(yj) + dual_pullback(map, xj, kernel.grad_second(x, xj)));
  }
  return u;
}

ParticleSet svmd_step(const ParticleSet& particles, const MirrorMap& map, const Kernel& kernel,
                      const DualScore& score, double eta) {
  if (!score) throw ConfigError("svmd_step: no analytic dual score available");
  const Eigen::Index n = particles.points.rows();
  Matrix dual(n, map.dual_dim());
  Matrix scores(n, map.dual_dim());
  for (Eigen::Index i = 0; i < n; ++i) {
    dual.row(i) = grad_phi(map, particles.points.row(i).transpose()).transpose();
    scores.row(i) = score(dual.row(i).transpose()).transpose();
  }
  // Same sum as svmd_direction with w_j = 1/n, reusing the per-particle scores.
  ParticleSet out{Matrix(n, particles.points.cols()), particles.domain, particles.iteration + 1};
  const double w = 1.0 / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector xi = particles.points.row(i).transpose();
    Vector u = Vector::Zero(map.dual_dim());
    for (Eigen::Index j = 0; j < n; ++j) {
      const Vector xj = particles.points.row(j).transpose();
      const double k = kernel(xi, xj);
      u += w * (k * scores.row(j).transpose() + dual_pullback(map, xj, kernel.grad_second(xi, xj)));
    }
    out.points.row(i) = grad_phi_star(map, dual.row(i).transpose() + eta * u).transpose();
  }
  if (map.kind != MirrorKind::Identity) require_strict(out, "svmd_step");
  return out;
}

DualScore dirichlet_mixture_dual_score(const DirichletMixtureSpec& spec, const MirrorMap& map) {
  spec.validate();
  if (map.kind != MirrorKind::EntropicSimplex || map.domain.dim != spec.dim()) {
    throw ConfigError("dual score needs the entropic map on the mixture's simplex");
  }
  // In dual coordinates each component has log q_k(y) = c_k + sum_i alpha_ki log x_i(y);
  // the +1 per coordinate over the Dirichlet exponent comes from the Jacobian det = prod x_i.
  const std::size_t m = spec.alphas.size();
  std::vector<double> log_const(m);
  for (std::size_t k = 0; k < m; ++k) {
    const Vector& a = spec.alphas[k];
    double c = std::lgamma(a.sum());
    for (Eigen::Index i = 0; i < a.size(); ++i) c -= std::lgamma(a[i]);
    const double weight = spec.weights.empty() ? 1.0 / static_cast<double>(m) : spec.weights[k];
    log_const[k] = std::log(weight) + c;
  }
  return [spec, map, log_const](const VectorRef& y) -> Vector {
    const Vector x = grad_phi_star(map, y);
    const Eigen::ArrayXd log_x = x.array().log();
    const std::size_t m = spec.alphas.size();
    std::vector<double> log_q(m);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
      log_q[k] = log_const[k] + (spec.alphas[k].array() * log_x).sum();
      top = std::max(top, log_q[k]);
    }
    double total = 0.0;
    for (double& v : log_q) total += (v = std::exp(v - top));
    const Eigen::Index n = y.size();
    Vector grad = Vector::Zero(n);
    for (std::size_t k = 0; k < m; ++k) {
      const Vector& a = spec.alphas[k];
      grad += (log_q[k] / total) * (a.head(n) - a.sum() * x.head(n));
    }
    return grad;
  };
}

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::VT: return "vt";
    case Algorithm::ProjVT: return "projvt";
    case Algorithm::MirrorVT: return "mirrorvt";
    case Algorithm::SVMDKernel: return "svmd";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "vt") return Algorithm::VT;
  if (name == "projvt") return Algorithm::ProjVT;
  if (name == "mirrorvt") return Algorithm::MirrorVT;
  if (name == "svmd") return Algorithm::SVMDKernel;
  throw ConfigError("unknown algorithm '" + name + "' (expected vt, projvt, mirrorvt or svmd)");
}

void TransportConfig::validate() const {
  if (!(eta >= 0.0)) throw ConfigError("eta must be nonnegative");
  if (T < 1) throw ConfigError("T must be at least 1");
  if (patience < 1) throw ConfigError("patience must be at least 1");
  if (snapshot_every < 1) throw ConfigError("snapshot_every must be at least 1");
  if (svmd_bandwidth && !(*svmd_bandwidth > 0.0)) throw ConfigError("svmd bandwidth must be positive");
  vfm.validate();
}

RunHistory run(const TransportConfig& config, const ParticleSet& initial,
               const VariationalFunctional& fun, Rng& rng, const DualScore* score) {
  using Clock = std::chrono::steady_clock;
  config.validate();
  fun.validate();
  if (config.algorithm == Algorithm::SVMDKernel) {
    if (fun.kind != FunctionalKind::KL) throw ConfigError("svmd mode supports the KL functional only");
    if (score == nullptr || !*score) throw ConfigError("svmd mode needs an analytic dual score");
  }
  if (initial.size() == 0) throw ConfigError("run: no initial particles");

  RunHistory history;
  if (config.algorithm == Algorithm::MirrorVT) {
    history.warnings.push_back(
        "stepsize bound eta < alpha/h is not checked (h is not observable)");
  }
  const Matrix& targets = fun.target->samples;
  history.bandwidth = median_heuristic(initial.points, targets);
  const Kernel mmd_kernel{history.bandwidth};

  ParticleSet current = initial;
  current.iteration = 0;
  history.append({0, mmd2(current.points, targets, mmd_kernel),
                  std::numeric_limits<double>::quiet_NaN(), 0, 0.0});
  history.snapshots.push_back({0, current.points});

  const int d = initial.domain.dim;
  std::optional<ShallowNet> previous;
  const auto start = Clock::now();
  for (int t = 1; t <= config.T; ++t) {
    HistoryRow row;
    row.iteration = t;
    try {
      if (config.algorithm == Algorithm::SVMDKernel) {
        const double bw = config.svmd_bandwidth ? *config.svmd_bandwidth
                                                : median_pairwise(current.points);
        current = svmd_step(current, config.map, Kernel{bw}, *score, config.eta);
        row.objective = std::numeric_limits<double>::quiet_NaN();
      } else {
        const ShallowNet start_net = (config.vfm.warm_start && previous)
                                         ? *previous
                                         : net_init(config.vfm, d, rng);
        const ShallowNet net = vfm_run(current.points, fun, start_net, rng);
        const ObjectiveEstimate est = objective_estimate(fun, net, current.points);
        row.objective = est.value;
        row.clamps = est.clamped;
        switch (config.algorithm) {
          case Algorithm::VT: current = vt_step(current, net, config.eta); break;
          case Algorithm::ProjVT: current = projvt_step(current, net, config.eta); break;
          case Algorithm::MirrorVT: current = mirrorvt_step(current, net, config.eta, config.map); break;
          case Algorithm::SVMDKernel: break;
        }
        if (config.vfm.warm_start) previous = net;
      }
    } catch (const std::exception& e) {
      history.status = RunStatus::Aborted;
      history.abort_reason = "iteration " + std::to_string(t) + ": " + e.what();
      break;
    }
    current.iteration = t;
    row.mmd = mmd2(current.points, targets, mmd_kernel);
    row.wallclock_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    history.append(row);
    if (t % config.snapshot_every == 0) history.snapshots.push_back({t, current.points});
    if (should_stop(history, config.patience)) {
      history.status = RunStatus::EarlyStopped;
      break;
    }
  }
  history.stop_iteration = history.rows.back().iteration;
  if (history.snapshots.back().iteration != history.stop_iteration) {
    history.snapshots.push_back({history.stop_iteration, current.points});
  }
  history.final_particles = current.points;
  return history;
}

}  // namespace mirrorvt

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mirrorvt/datagen.hpp"
#include "mirrorvt/functionals.hpp"
#include "mirrorvt/geometry.hpp"
#include "mirrorvt/metrics.hpp"
#include "mirrorvt/rng.hpp"
#include "mirrorvt/vfm.hpp"

namespace mirrorvt {

/// Empirical measure: one particle per row.
struct ParticleSet {
  Matrix points;
  Domain domain;
  int iteration = 0;

  Eigen::Index size() const { return points.rows(); }
};

/// Primal gradient field x -> grad f(x), d coordinates in and out.
using GradientField = std::function<Vector(const VectorRef&)>;

/// Score of the target in dual coordinates, y -> grad log q*(y).
using DualScore = std::function<Vector(const VectorRef&)>;

GradientField network_field(const ShallowNet& net);

/// x <- x - eta * grad f(x). No domain enforcement.
ParticleSet vt_step(const ParticleSet& particles, const GradientField& grad, double eta);
ParticleSet vt_step(const ParticleSet& particles, const ShallowNet& net, double eta);

/// vt_step followed by Euclidean projection back onto the domain.
ParticleSet projvt_step(const ParticleSet& particles, const GradientField& grad, double eta);
ParticleSet projvt_step(const ParticleSet& particles, const ShallowNet& net, double eta);

/// Mirror step: y = grad phi(x), y' = y - eta (Hess phi(x))^{-1} grad f(x),
/// x' = grad phi*(y'). The primal gradient is expressed in the map's chart
/// first (see chart_gradient). Inputs must be strictly interior.
ParticleSet mirrorvt_step(const ParticleSet& particles, const GradientField& grad, double eta,
                          const MirrorMap& map);
ParticleSet mirrorvt_step(const ParticleSet& particles, const ShallowNet& net, double eta,
                          const MirrorMap& map);

/// Kernelised dual direction at y against a weighted support {y_j, w_j}:
///   u(y) = sum_j w_j [ k_phi(y, y_j) s(y_j) + grad_{y_j} k_phi(y, y_j) ]
/// with k_phi(y, y') = k(grad phi*(y), grad phi*(y')). This equals minus the
/// integral operator L_{k,q} applied to grad log q - s when the support
/// discretises a smooth q.
Vector svmd_direction(const MirrorMap& map, const Kernel& kernel, const DualScore& score,
                      const VectorRef& y, const MatrixRef& support, const VectorRef& weights);

/// y' = y + eta * u(y) for every particle, with uniform weights over the
/// particles' own dual images, then mapped back through grad phi*.
ParticleSet svmd_step(const ParticleSet& particles, const MirrorMap& map, const Kernel& kernel,
                      const DualScore& score, double eta);

/// grad log q*(y) for a Dirichlet mixture pushed through the entropic map.
DualScore dirichlet_mixture_dual_score(const DirichletMixtureSpec& spec, const MirrorMap& map);

enum class Algorithm { VT, ProjVT, MirrorVT, SVMDKernel };

std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);

struct TransportConfig {
  Algorithm algorithm = Algorithm::MirrorVT;
  double eta = 0.1;
  int T = 500;
  int patience = 20;
  VfmConfig vfm;
  MirrorMap map;
  int snapshot_every = 25;
  // SVMD only: fixed kernel bandwidth; median heuristic per step when unset.
  std::optional<double> svmd_bandwidth;

  void validate() const;
};

/// Outer loop: per iteration fit the variational network on the current
/// particles (skipped for SVMD), push once, log MMD and the objective
/// estimate, and stop after `patience` iterations without MMD improvement.
/// Row 0 of the history is the pre-update baseline. Step failures are
/// recorded as RunStatus::Aborted rather than thrown.
RunHistory run(const TransportConfig& config, const ParticleSet& initial,
               const VariationalFunctional& fun, Rng& rng, const DualScore* score = nullptr);

}  // namespace mirrorvt

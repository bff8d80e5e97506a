#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mirrorvt/types.hpp"

namespace mirrorvt {

/// Gaussian RBF kernel exp(-|x - x'|^2 / (2 l^2)).
struct Kernel {
  double bandwidth = 1.0;

  double operator()(const VectorRef& x, const VectorRef& xp) const;
  /// Gradient with respect to the second argument.
  Vector grad_second(const VectorRef& x, const VectorRef& xp) const;
};

/// Biased (V-statistic) squared MMD between two point sets.
double mmd2(const MatrixRef& X, const MatrixRef& Y, const Kernel& kernel);

/// Median pairwise Euclidean distance over the pooled set X u Y.
double median_heuristic(const MatrixRef& X, const MatrixRef& Y);

enum class RunStatus { Completed, EarlyStopped, Aborted };

std::string to_string(RunStatus status);

struct HistoryRow {
  int iteration = 0;
  double mmd = 0.0;        // squared MMD to the target set
  double objective = 0.0;  // variational estimate that drove the step (NaN at iteration 0)
  int clamps = 0;
  double wallclock_ms = 0.0;
};

struct Snapshot {
  int iteration = 0;
  Matrix points;
};

struct RunHistory {
  std::vector<HistoryRow> rows;
  std::vector<Snapshot> snapshots;
  RunStatus status = RunStatus::Completed;
  int stop_iteration = 0;
  std::string abort_reason;
  Matrix final_particles;
  double bandwidth = 0.0;
  std::vector<std::string> warnings;

  /// Appends a row; iterations must be strictly increasing.
  void append(const HistoryRow& row);
};

/// True when the best (strictly smallest) MMD is more than `patience`
/// iterations older than the latest row.
bool should_stop(const RunHistory& history, int patience);

}  // namespace mirrorvt

#include "mirrorvt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mirrorvt {
namespace {

double mean_kernel(const MatrixRef& A, const MatrixRef& B, double inv_two_l2) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < B.rows(); ++j) {
      row += std::exp(-(A.row(i) - B.row(j)).squaredNorm() * inv_two_l2);
    }
    total += row;
  }
  return total / (static_cast<double>(A.rows()) * static_cast<double>(B.rows()));
}

}  // namespace

double Kernel::operator()(const VectorRef& x, const VectorRef& xp) const {
  return std::exp(-(x - xp).squaredNorm() / (2.0 * bandwidth * bandwidth));
}

Vector Kernel::grad_second(const VectorRef& x, const VectorRef& xp) const {
  return (x - xp) * ((*this)(x, xp) / (bandwidth * bandwidth));
}

double mmd2(const MatrixRef& X, const MatrixRef& Y, const Kernel& kernel) {
  if (X.rows() == 0 || Y.rows() == 0) throw std::invalid_argument("mmd2: empty point set");
  if (X.cols() != Y.cols()) throw DimensionError("mmd2: point sets differ in dimension");
  if (!(kernel.bandwidth > 0.0)) throw std::invalid_argument("mmd2: bandwidth must be positive");
  const double c = 1.0 / (2.0 * kernel.bandwidth * kernel.bandwidth);
  return mean_kernel(X, X, c) + mean_kernel(Y, Y, c) - 2.0 * mean_kernel(X, Y, c);
}

double median_heuristic(const MatrixRef& X, const MatrixRef& Y) {
  if (X.cols() != Y.cols()) throw DimensionError("median_heuristic: dimension mismatch");
  Matrix pooled(X.rows() + Y.rows(), X.cols());
  pooled << X, Y;
  std::vector<double> dists;
  dists.reserve(static_cast<std::size_t>(pooled.rows() * (pooled.rows() - 1) / 2));
  for (Eigen::Index i = 0; i < pooled.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < pooled.rows(); ++j) {
      dists.push_back((pooled.row(i) - pooled.row(j)).norm());
    }
  }
  if (dists.empty() || *std::max_element(dists.begin(), dists.end()) == 0.0) {
    throw DegenerateError("median_heuristic: all points coincide");
  }
  const std::size_t n = dists.size();
  auto mid = dists.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(dists.begin(), mid, dists.end());
  double median = *mid;
  if (n % 2 == 0) median = 0.5 * (median + *std::max_element(dists.begin(), mid));
  if (median == 0.0) throw DegenerateError("median_heuristic: median distance is zero");
  return median;
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Completed: return "completed";
    case RunStatus::EarlyStopped: return "early_stopped";
    case RunStatus::Aborted: return "aborted";
  }
  return "unknown";
}

void RunHistory::append(const HistoryRow& row) {
  if (!rows.empty() && row.iteration <= rows.back().iteration) {
    throw std::logic_error("RunHistory: iterations must be strictly increasing");
  }
  rows.push_back(row);
}

bool should_stop(const RunHistory& history, int patience) {
  if (history.rows.empty()) throw std::invalid_argument("should_stop: empty history");
  const HistoryRow* best = &history.rows.front();
  for (const HistoryRow& row : history.rows) {
    if (row.mmd < best->mmd) best = &row;
  }
  return history.rows.back().iteration - best->iteration > patience;
}

}  // namespace mirrorvt

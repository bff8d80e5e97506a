#pragma once

#include <initializer_list>

#include "mirrorvt/types.hpp"

namespace testing {

inline mirrorvt::Vector vec(std::initializer_list<double> v) {
  mirrorvt::Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline mirrorvt::Matrix rows(std::initializer_list<std::initializer_list<double>> r) {
  const auto n = static_cast<Eigen::Index>(r.size());
  const auto d = n == 0 ? 0 : static_cast<Eigen::Index>(r.begin()->size());
  mirrorvt::Matrix out(n, d);
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index k = 0;
    for (double x : row) out(i, k++) = x;
    ++i;
  }
  return out;
}

}  // namespace testing

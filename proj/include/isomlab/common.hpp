#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace isomlab {

using cdouble = std::complex<double>;

// Multi-index over N_0^d.
using MultiIndex = std::vector<int>;

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline bool is_nonneg(const std::vector<double>& t) {
  for (double x : t)
    if (!(x >= 0.0)) return false;
  return true;
}

}  // namespace isomlab

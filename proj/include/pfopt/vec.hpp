#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace pfopt {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(const std::vector<double>& a) { return dot(a, a); }

inline double norm(const std::vector<double>& a) { return std::sqrt(norm_sq(a)); }

// y += alpha * x
inline void axpy(std::vector<double>& y, double alpha, const std::vector<double>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

inline bool all_finite(const std::vector<double>& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace pfopt

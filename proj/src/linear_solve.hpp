#pragma once

// Dense Gaussian elimination with partial pivoting for the small systems the
// SHS solver produces (at most a few dozen unknowns).

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "aoi/errors.hpp"

namespace aoi::detail {

class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Solves a x = b in place.  `what` names the system in error messages.
inline std::vector<double> solve_dense(DenseMatrix a, std::vector<double> b, const std::string& what) {
  const std::size_t n = a.size();
  double scale = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) scale = std::max(scale, std::abs(a(r, c)));
  const double pivot_floor = 1e-13 * (scale > 0.0 ? scale : 1.0);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(a(r, k)) > std::abs(a(piv, k))) piv = r;
    if (!(std::abs(a(piv, k)) > pivot_floor))
      throw SolverError(what + ": singular system (no pivot in column " + std::to_string(k) + ")");
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a(r, k) / a(k, k);
      if (f == 0.0) continue;
      a(r, k) = 0.0;
      for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
      b[r] -= f * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= a(k, c) * b[c];
    b[k] = s / a(k, k);
  }
  return b;
}

}  // namespace aoi::detail

#ifndef ADSOLVE_KERNELS_CHOLESKY_HPP_
#define ADSOLVE_KERNELS_CHOLESKY_HPP_

// Cholesky factorization A = L L^T (xPOTRF 'L'/xPOTRS/xPOCON contracts).
// Only the lower triangle of A is read.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "adsolve/errors.hpp"
#include "adsolve/kernels/norm_estimate.hpp"
#include "adsolve/kernels/triangular.hpp"
#include "adsolve/matrix.hpp"

namespace adsolve {

class CholFactor {
 public:
  /// Lower-triangular factor; the strict upper triangle is zero.
  const DenseMatrix& l() const noexcept { return l_; }
  double anorm() const noexcept { return anorm_; }
  std::size_t order() const noexcept { return l_.n_rows(); }

  void solve_in_place(std::span<double> x) const noexcept {
    const std::size_t n = order();
    detail::forward_substitute(l_.data(), n, n, x.data());
    detail::forward_substitute_transposed(l_.data(), n, n, x.data());
  }

 private:
  friend CholFactor cholesky_factor(const DenseMatrix& a);
  CholFactor(DenseMatrix l, double anorm) : l_(std::move(l)), anorm_(anorm) {}

  DenseMatrix l_;
  double anorm_;
};

namespace detail {

/// 1-norm of the symmetric matrix whose lower triangle is stored in a.
inline double symmetric_lower_norm1(const DenseMatrix& a) {
  const std::size_t n = a.n_rows();
  std::vector<double> sums(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    sums[j] += std::abs(a(j, j));
    for (std::size_t i = j + 1; i < n; ++i) {
      const double v = std::abs(a(i, j));
      sums[j] += v;
      sums[i] += v;
    }
  }
  double best = 0.0;
  for (double s : sums) best = std::max(best, s);
  return best;
}

}  // namespace detail

/// Right-looking column Cholesky. Throws NotPositiveDefiniteError at the
/// first column whose pivot is not strictly positive.
inline CholFactor cholesky_factor(const DenseMatrix& a) {
  if (!a.is_square()) throw ValidationError("cholesky_factor: matrix not square");
  const std::size_t n = a.n_rows();
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) l(i, j) = a(i, j);
  }

  double* p = l.data();
  for (std::size_t j = 0; j < n; ++j) {
    double* col_j = p + j * n;
    const double d = col_j[j];
    if (!(d > 0.0)) throw NotPositiveDefiniteError(j);
    const double ljj = std::sqrt(d);
    col_j[j] = ljj;
    const double inv = 1.0 / ljj;
    for (std::size_t i = j + 1; i < n; ++i) col_j[i] *= inv;

    // trailing update of the lower triangle
    for (std::size_t k = j + 1; k < n; ++k) {
      const double f = col_j[k];
      if (f == 0.0) continue;
      double* col_k = p + k * n;
      for (std::size_t i = k; i < n; ++i) col_k[i] -= f * col_j[i];
    }
  }
  return CholFactor(std::move(l), detail::symmetric_lower_norm1(a));
}

inline DenseMatrix cholesky_solve(const CholFactor& f, const DenseMatrix& b) {
  if (b.n_rows() != f.order()) {
    throw ValidationError("cholesky_solve: right-hand side row count mismatch");
  }
  DenseMatrix x = b;
  for (std::size_t k = 0; k < x.n_cols(); ++k) f.solve_in_place(x.col(k));
  return x;
}

inline double cholesky_rcond(const CholFactor& f) {
  // A^{-1} is symmetric, so both callbacks are the same solve
  auto apply = [&](std::span<double> x) { f.solve_in_place(x); };
  return reciprocal_condition(f.anorm(),
                              estimate_norm1(f.order(), apply, apply));
}

}  // namespace adsolve

#endif  // ADSOLVE_KERNELS_CHOLESKY_HPP_

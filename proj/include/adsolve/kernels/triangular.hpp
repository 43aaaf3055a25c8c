#ifndef ADSOLVE_KERNELS_TRIANGULAR_HPP_
#define ADSOLVE_KERNELS_TRIANGULAR_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "adsolve/detect.hpp"
#include "adsolve/errors.hpp"
#include "adsolve/kernels/norm_estimate.hpp"
#include "adsolve/matrix.hpp"

namespace adsolve {

namespace detail {

// Substitution on the n x n triangle of a column-major array with leading
// dimension ld. All loops run down contiguous columns. unit_diag treats the
// diagonal as ones without reading it.

inline void forward_substitute(const double* a, std::size_t ld, std::size_t n,
                               double* x, bool unit_diag = false) noexcept {
  for (std::size_t j = 0; j < n; ++j) {
    if (!unit_diag) x[j] /= a[j + j * ld];
    const double xj = x[j];
    if (xj == 0.0) continue;
    const double* col = a + j * ld;
    for (std::size_t i = j + 1; i < n; ++i) x[i] -= xj * col[i];
  }
}

inline void back_substitute(const double* a, std::size_t ld, std::size_t n,
                            double* x, bool unit_diag = false) noexcept {
  for (std::size_t j = n; j-- > 0;) {
    if (!unit_diag) x[j] /= a[j + j * ld];
    const double xj = x[j];
    if (xj == 0.0) continue;
    const double* col = a + j * ld;
    for (std::size_t i = 0; i < j; ++i) x[i] -= xj * col[i];
  }
}

// Solve L^T x = b with L lower triangular (an upper-triangular system, so
// it runs bottom-up).
inline void forward_substitute_transposed(const double* a, std::size_t ld,
                                          std::size_t n, double* x,
                                          bool unit_diag = false) noexcept {
  for (std::size_t j = n; j-- > 0;) {
    const double* col = a + j * ld;
    double t = x[j];
    for (std::size_t i = j + 1; i < n; ++i) t -= col[i] * x[i];
    x[j] = unit_diag ? t : t / col[j];
  }
}

// Solve U^T x = b with U upper triangular (top-down).
inline void back_substitute_transposed(const double* a, std::size_t ld,
                                       std::size_t n, double* x,
                                       bool unit_diag = false) noexcept {
  for (std::size_t j = 0; j < n; ++j) {
    const double* col = a + j * ld;
    double t = x[j];
    for (std::size_t i = 0; i < j; ++i) t -= col[i] * x[i];
    x[j] = unit_diag ? t : t / col[j];
  }
}

inline double triangle_norm1(const DenseMatrix& a, Triangle side) noexcept {
  const std::size_t n = a.n_rows();
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    if (side == Triangle::Lower) {
      for (std::size_t i = j; i < n; ++i) s += std::abs(a(i, j));
    } else {
      for (std::size_t i = 0; i <= j; ++i) s += std::abs(a(i, j));
    }
    best = std::max(best, s);
  }
  return best;
}

inline void check_rhs(const DenseMatrix& a, const DenseMatrix& b) {
  if (b.n_rows() != a.n_rows()) {
    throw ValidationError("right-hand side has " + std::to_string(b.n_rows()) +
                          " rows, expected " + std::to_string(a.n_rows()));
  }
}

}  // namespace detail

/// Solves A X = B by substitution directly on the triangle of A selected by
/// side; the other triangle is never read. Lower runs top-down, Upper
/// bottom-up.
inline DenseMatrix tri_solve(const DenseMatrix& a, const DenseMatrix& b,
                             Triangle side) {
  if (!a.is_square()) throw ValidationError("tri_solve: matrix not square");
  detail::check_rhs(a, b);
  const std::size_t n = a.n_rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) == 0.0) throw SingularError(i);
  }
  DenseMatrix x = b;
  for (std::size_t k = 0; k < x.n_cols(); ++k) {
    if (side == Triangle::Lower) {
      detail::forward_substitute(a.data(), n, n, x.col(k).data());
    } else {
      detail::back_substitute(a.data(), n, n, x.col(k).data());
    }
  }
  return x;
}

/// Estimated 1-norm reciprocal condition number of a triangular matrix;
/// 0 when a diagonal entry is exactly zero.
inline double tri_rcond(const DenseMatrix& a, Triangle side) {
  if (!a.is_square()) throw ValidationError("tri_rcond: matrix not square");
  const std::size_t n = a.n_rows();
  if (n == 0) return 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) == 0.0) return 0.0;
  }
  const double* p = a.data();
  const bool lower = side == Triangle::Lower;
  const double ainv = estimate_norm1(
      n,
      [&](std::span<double> x) {
        if (lower) detail::forward_substitute(p, n, n, x.data());
        else detail::back_substitute(p, n, n, x.data());
      },
      [&](std::span<double> x) {
        if (lower) detail::forward_substitute_transposed(p, n, n, x.data());
        else detail::back_substitute_transposed(p, n, n, x.data());
      });
  return reciprocal_condition(detail::triangle_norm1(a, side), ainv);
}

}  // namespace adsolve

#endif  // ADSOLVE_KERNELS_TRIANGULAR_HPP_

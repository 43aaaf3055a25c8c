#ifndef ADSOLVE_KERNELS_LU_HPP_
#define ADSOLVE_KERNELS_LU_HPP_

// Partial-pivoted LU of a square matrix (xGETRF/xGETRS/xGECON contracts).

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

/// P A = L U with L unit lower triangular and U upper triangular packed
/// into one matrix. pivots[k] is the row swapped with row k at step k.
class LuFactor {
 public:
  const DenseMatrix& lu() const noexcept { return lu_; }
  std::span<const std::size_t> pivots() const noexcept { return pivots_; }
  double anorm() const noexcept { return anorm_; }
  std::size_t order() const noexcept { return lu_.n_rows(); }

  /// x <- A^{-1} x
  void solve_in_place(std::span<double> x) const noexcept {
    const std::size_t n = order();
    for (std::size_t k = 0; k < n; ++k) {
      if (pivots_[k] != k) std::swap(x[k], x[pivots_[k]]);
    }
    detail::forward_substitute(lu_.data(), n, n, x.data(), /*unit_diag=*/true);
    detail::back_substitute(lu_.data(), n, n, x.data());
  }

  /// x <- A^{-T} x
  void solve_transposed_in_place(std::span<double> x) const noexcept {
    const std::size_t n = order();
    detail::back_substitute_transposed(lu_.data(), n, n, x.data());
    detail::forward_substitute_transposed(lu_.data(), n, n, x.data(),
                                          /*unit_diag=*/true);
    for (std::size_t k = n; k-- > 0;) {
      if (pivots_[k] != k) std::swap(x[k], x[pivots_[k]]);
    }
  }

 private:
  friend LuFactor lu_factor(const DenseMatrix& a);
  LuFactor(DenseMatrix lu, std::vector<std::size_t> pivots, double anorm)
      : lu_(std::move(lu)), pivots_(std::move(pivots)), anorm_(anorm) {}

  DenseMatrix lu_;
  std::vector<std::size_t> pivots_;
  double anorm_;
};

/// Right-looking elimination; the pivot is the first row holding the
/// largest magnitude in the column. Throws SingularError on an exactly
/// zero pivot.
inline LuFactor lu_factor(const DenseMatrix& a) {
  if (!a.is_square()) throw ValidationError("lu_factor: matrix not square");
  const std::size_t n = a.n_rows();
  DenseMatrix lu = a;
  std::vector<std::size_t> pivots(n);
  double* p = lu.data();

  for (std::size_t k = 0; k < n; ++k) {
    double* col_k = p + k * n;
    std::size_t piv = k;
    double best = std::abs(col_k[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(col_k[i]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    pivots[k] = piv;
    if (col_k[piv] == 0.0) throw SingularError(k);

    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(p[k + j * n], p[piv + j * n]);
    }

    const double inv = 1.0 / col_k[k];
    for (std::size_t i = k + 1; i < n; ++i) col_k[i] *= inv;

    for (std::size_t j = k + 1; j < n; ++j) {
      double* col_j = p + j * n;
      const double f = col_j[k];
      for (std::size_t i = k + 1; i < n; ++i) col_j[i] -= f * col_k[i];
    }
  }
  return LuFactor(std::move(lu), std::move(pivots), norm1(a));
}

inline DenseMatrix lu_solve(const LuFactor& f, const DenseMatrix& b) {
  if (b.n_rows() != f.order()) {
    throw ValidationError("lu_solve: right-hand side row count mismatch");
  }
  DenseMatrix x = b;
  for (std::size_t k = 0; k < x.n_cols(); ++k) f.solve_in_place(x.col(k));
  return x;
}

inline double lu_rcond(const LuFactor& f) {
  const double ainv = estimate_norm1(
      f.order(), [&](std::span<double> x) { f.solve_in_place(x); },
      [&](std::span<double> x) { f.solve_transposed_in_place(x); });
  return reciprocal_condition(f.anorm(), ainv);
}

}  // namespace adsolve

#endif  // ADSOLVE_KERNELS_LU_HPP_

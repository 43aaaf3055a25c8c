#ifndef ADSOLVE_KERNELS_NORM_ESTIMATE_HPP_
#define ADSOLVE_KERNELS_NORM_ESTIMATE_HPP_

// Hager-Higham 1-norm estimation of an implicitly given operator B, as in
// LAPACK's xLACN2. B is only applied through two in-place callbacks:
//   apply(x)           x <- B x
//   apply_transpose(x) x <- B^T x
// For condition estimation B = A^{-1}, so both callbacks are triangular
// solves with an existing factorization.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "adsolve/matrix.hpp"

namespace adsolve {

namespace detail {

inline std::size_t index_of_max_abs(std::span<const double> x) noexcept {
  std::size_t best = 0;
  double best_val = -1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > best_val) {
      best_val = std::abs(x[i]);
      best = i;
    }
  }
  return best;
}

inline double sign_of(double v) noexcept { return v >= 0.0 ? 1.0 : -1.0; }

}  // namespace detail

/// Lower bound on ||B||_1; exact on diagonal operators. At most five
/// probe iterations followed by the alternating-sign refinement vector.
template <class Apply, class ApplyTranspose>
double estimate_norm1(std::size_t n, Apply&& apply,
                      ApplyTranspose&& apply_transpose) {
  constexpr int kMaxIterations = 5;
  if (n == 0) return 0.0;

  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  apply(std::span<double>(x));
  if (n == 1) return std::abs(x[0]);

  double est = norm1(x);
  std::vector<double> signs(n);
  for (std::size_t i = 0; i < n; ++i) signs[i] = detail::sign_of(x[i]);

  x = signs;
  apply_transpose(std::span<double>(x));
  std::size_t j = detail::index_of_max_abs(x);

  for (int iter = 2;; ++iter) {
    std::fill(x.begin(), x.end(), 0.0);
    x[j] = 1.0;
    apply(std::span<double>(x));

    const double est_old = est;
    est = norm1(x);

    bool same_signs = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (detail::sign_of(x[i]) != signs[i]) {
        same_signs = false;
        break;
      }
    }
    // a repeated sign vector or no growth means convergence
    if (same_signs || est <= est_old) break;

    for (std::size_t i = 0; i < n; ++i) signs[i] = detail::sign_of(x[i]);
    x = signs;
    apply_transpose(std::span<double>(x));
    const std::size_t j_last = j;
    j = detail::index_of_max_abs(x);
    if (std::abs(x[j_last]) == std::abs(x[j]) || iter >= kMaxIterations) break;
  }

  // alternating-sign vector guards against the probe sequence missing
  // the dominant column
  double alt_sign = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = alt_sign *
           (1.0 + static_cast<double>(i) / static_cast<double>(n - 1));
    alt_sign = -alt_sign;
  }
  apply(std::span<double>(x));
  const double alt = 2.0 * norm1(x) / static_cast<double>(3 * n);
  return alt > est ? alt : est;
}

/// 1 / (anorm * ainvnorm), 0 for a zero or non-finite norm.
inline double reciprocal_condition(double anorm, double ainvnorm) noexcept {
  if (anorm == 0.0 || ainvnorm == 0.0) return 0.0;
  if (!std::isfinite(anorm) || !std::isfinite(ainvnorm)) return 0.0;
  const double r = (1.0 / ainvnorm) / anorm;
  return r > 1.0 ? 1.0 : r;
}

}  // namespace adsolve

#endif  // ADSOLVE_KERNELS_NORM_ESTIMATE_HPP_

#ifndef ADSOLVE_SOLVE_HPP_
#define ADSOLVE_SOLVE_HPP_

// Adaptive solver: classify A, run the matching kernel, gate on the
// estimated reciprocal condition number and fall back to the SVD-based
// minimum-norm solver when the kernel fails or the system is poorly
// conditioned.

#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>

#include "adsolve/config.hpp"
#include "adsolve/detect.hpp"
#include "adsolve/errors.hpp"
#include "adsolve/kernels/band.hpp"
#include "adsolve/kernels/cholesky.hpp"
#include "adsolve/kernels/lu.hpp"
#include "adsolve/kernels/svd.hpp"
#include "adsolve/kernels/triangular.hpp"
#include "adsolve/matrix.hpp"

namespace adsolve {

struct SolveOutcome {
  DenseMatrix x;
  SolveReport report;
};

/// ||A X - B||_1 / (||A||_1 ||X||_1 + ||B||_1), 0 when the denominator is.
inline double relative_residual(const DenseMatrix& a, const DenseMatrix& x,
                                const DenseMatrix& b) {
  const double denom = norm1(a) * norm1(x) + norm1(b);
  if (denom == 0.0) return 0.0;
  return norm1(subtract(multiply(a, x), b)) / denom;
}

namespace detail {

// What a specialised kernel produced before the rcond gate. x is empty
// after an exact-singularity failure.
struct KernelResult {
  Method method;
  std::optional<DenseMatrix> x;
  double rcond = 0.0;
};

inline void validate_inputs(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.empty()) throw ValidationError("coefficient matrix is empty");
  if (b.n_rows() != a.n_rows()) {
    throw ValidationError("right-hand side has " + std::to_string(b.n_rows()) +
                          " rows, coefficient matrix has " +
                          std::to_string(a.n_rows()));
  }
  if (b.n_cols() == 0) throw ValidationError("right-hand side has no columns");
  if (!all_finite(a)) throw ValidationError("coefficient matrix is not finite");
  if (!all_finite(b)) throw ValidationError("right-hand side is not finite");
}

inline KernelResult run_general(const DenseMatrix& a, const DenseMatrix& b) {
  try {
    const LuFactor f = lu_factor(a);
    return {Method::GeneralLU, lu_solve(f, b), lu_rcond(f)};
  } catch (const SingularError&) {
    return {Method::GeneralLU, std::nullopt, 0.0};
  }
}

inline KernelResult run_banded(const DenseMatrix& a, const DenseMatrix& b,
                               BandExtent e) {
  try {
    const BandFactor f = band_factor(pack_band(a, e.kl, e.ku));
    return {Method::BandedLU, band_solve(f, b), band_rcond(f)};
  } catch (const SingularError&) {
    return {Method::BandedLU, std::nullopt, 0.0};
  }
}

inline KernelResult run_triangular(const DenseMatrix& a, const DenseMatrix& b,
                                   Triangle side) {
  const Method m = side == Triangle::Lower ? Method::TriangularLower
                                           : Method::TriangularUpper;
  try {
    DenseMatrix x = tri_solve(a, b, side);
    return {m, std::move(x), tri_rcond(a, side)};
  } catch (const SingularError&) {
    return {m, std::nullopt, 0.0};
  }
}

// A failed Cholesky means the matrix was not sympd after all; the general
// path re-factors the untouched A.
inline KernelResult run_sympd(const DenseMatrix& a, const DenseMatrix& b) {
  try {
    const CholFactor f = cholesky_factor(a);
    return {Method::CholeskySympd, cholesky_solve(f, b), cholesky_rcond(f)};
  } catch (const NotPositiveDefiniteError&) {
    return run_general(a, b);
  }
}

// rcond is the failed kernel's estimate. Without one (non-square A) the
// 2-norm reciprocal condition s_min / s_max is reported instead.
inline SolveOutcome run_fallback(const DenseMatrix& a, const DenseMatrix& b,
                                 const SolverConfig& config,
                                 std::optional<double> rcond) {
  LeastSquaresResult ls = lsq_min_norm(a, b, config.lsq_cutoff_ratio);
  if (!rcond) {
    const auto& s = ls.singular_values;
    rcond = (!s.empty() && s.front() > 0.0) ? s.back() / s.front() : 0.0;
  }
  SolveReport report;
  report.method_used = Method::SvdFallback;
  report.rcond = *rcond;
  report.fallback_taken = true;
  report.effective_rank = ls.effective_rank;
  report.relative_residual = relative_residual(a, ls.x, b);
  return {std::move(ls.x), report};
}

// Shared tail: rcond gate, fallback, residual.
inline SolveOutcome finish(const DenseMatrix& a, const DenseMatrix& b,
                           const SolverConfig& config, KernelResult k) {
  const bool failed = !k.x.has_value();
  if (failed || k.rcond < config.rcond_threshold) {
    if (!config.allow_fallback) throw PoorlyConditionedError(k.rcond);
    return run_fallback(a, b, config, k.rcond);
  }
  SolveReport report;
  report.method_used = k.method;
  report.rcond = k.rcond;
  report.relative_residual = relative_residual(a, *k.x, b);
  return {std::move(*k.x), report};
}

inline KernelResult run_method(const DenseMatrix& a, const DenseMatrix& b,
                               Method m) {
  switch (m) {
    case Method::BandedLU: return run_banded(a, b, band_extent(a));
    case Method::TriangularLower: return run_triangular(a, b, Triangle::Lower);
    case Method::TriangularUpper: return run_triangular(a, b, Triangle::Upper);
    case Method::CholeskySympd: return run_sympd(a, b);
    case Method::GeneralLU:
    case Method::SvdFallback: break;
  }
  return run_general(a, b);
}

}  // namespace detail

/// Solves A X = B, choosing the factorization from the detected structure
/// of A. Non-square A goes straight to the least-squares solver.
///
/// Throws ValidationError for non-finite or mismatched input,
/// PoorlyConditionedError when the fallback is needed but disabled, and
/// ConvergenceError when the SVD fallback itself fails.
inline SolveOutcome solve(const DenseMatrix& a, const DenseMatrix& b,
                          const SolverConfig& config = {}) {
  config.validate();
  detail::validate_inputs(a, b);

  if (!a.is_square()) {
    return detail::run_fallback(a, b, config, std::nullopt);
  }

  if (config.force_method == Method::SvdFallback) {
    return detail::run_fallback(a, b, config, std::nullopt);
  }
  if (config.force_method) {
    return detail::finish(a, b, config,
                          detail::run_method(a, b, *config.force_method));
  }

  const StructureClass cls = classify(a, config);
  detail::KernelResult k = std::visit(
      [&](const auto& c) -> detail::KernelResult {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, structure::Banded>) {
          return detail::run_banded(a, b, c.extent);
        } else if constexpr (std::is_same_v<C, structure::LowerTriangular>) {
          return detail::run_triangular(a, b, Triangle::Lower);
        } else if constexpr (std::is_same_v<C, structure::UpperTriangular>) {
          return detail::run_triangular(a, b, Triangle::Upper);
        } else if constexpr (std::is_same_v<C, structure::LikelySympd>) {
          return detail::run_sympd(a, b);
        } else {
          return detail::run_general(a, b);
        }
      },
      cls);
  return detail::finish(a, b, config, std::move(k));
}

/// The one-size-fits-all baseline: always LU, with the same rcond gate and
/// fallback as solve().
inline SolveOutcome solve_general(const DenseMatrix& a, const DenseMatrix& b,
                                  const SolverConfig& config = {}) {
  config.validate();
  detail::validate_inputs(a, b);
  if (!a.is_square()) {
    throw ValidationError("solve_general requires a square matrix");
  }
  return detail::finish(a, b, config, detail::run_general(a, b));
}

}  // namespace adsolve

#endif  // ADSOLVE_SOLVE_HPP_

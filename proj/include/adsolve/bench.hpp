#ifndef ADSOLVE_BENCH_HPP_
#define ADSOLVE_BENCH_HPP_

// Random system generators and the standard-vs-adaptive timing harness.
//
// Every generated matrix is a pure function of (seed, size, rep). The
// diagonal shifts keep all generated systems well conditioned, so timings
// never include the SVD fallback.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "adsolve/errors.hpp"
#include "adsolve/matrix.hpp"
#include "adsolve/solve.hpp"

namespace adsolve {

using Rng = std::mt19937_64;

/// Independent stream for one (seed, size, rep) triple.
inline Rng make_rng(std::uint64_t seed, std::uint64_t size, std::uint64_t rep) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(size),
                    static_cast<std::uint32_t>(size >> 32),
                    static_cast<std::uint32_t>(rep),
                    static_cast<std::uint32_t>(rep >> 32)};
  return Rng(seq);
}

/// Uniform in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform in [-0.5, 0.5).
inline double uniform_centered(Rng& rng) { return uniform01(rng) - 0.5; }

/// A = R^T R + I with R uniform in [-0.5, 0.5].
inline DenseMatrix gen_sympd(std::size_t n, Rng& rng) {
  if (n == 0) throw ValidationError("gen_sympd: n must be at least 1");
  DenseMatrix r(n, n);
  for (std::size_t k = 0; k < r.size(); ++k) r.data()[k] = uniform_centered(rng);
  DenseMatrix a(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double* rj = r.col(j).data();
    for (std::size_t i = j; i < n; ++i) {
      const double* ri = r.col(i).data();
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += ri[k] * rj[k];
      a(i, j) = s;
      a(j, i) = s;
    }
  }
  for (std::size_t i = 0; i < n; ++i) a(i, i) += 1.0;
  return a;
}

/// kl = ku = (diagonals - 1) / 2, band entries uniform in [-0.5, 0.5],
/// diagonal shifted by kl + ku + 1 for strict diagonal dominance.
inline DenseMatrix gen_banded(std::size_t n, std::size_t diagonals, Rng& rng) {
  if (n == 0 || diagonals % 2 == 0 || diagonals > 2 * n - 1) {
    throw ValidationError("gen_banded: diagonals must be odd and at most 2n-1");
  }
  const std::size_t k = (diagonals - 1) / 2;
  DenseMatrix a(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t lo = j > k ? j - k : 0;
    const std::size_t hi = std::min(n - 1, j + k);
    for (std::size_t i = lo; i <= hi; ++i) a(i, j) = uniform_centered(rng);
    a(j, j) += static_cast<double>(2 * k + 1);
  }
  return a;
}

/// Strict upper triangle zero, lower entries uniform in [-0.5, 0.5],
/// diagonal shifted by n/2 so every row is strictly diagonally dominant.
/// A unit shift leaves random triangular matrices with a condition number
/// growing exponentially in n (rcond near 1e-24 at n = 1000).
inline DenseMatrix gen_lower_tri(std::size_t n, Rng& rng) {
  if (n == 0) throw ValidationError("gen_lower_tri: n must be at least 1");
  DenseMatrix a(n, n);
  const double shift = std::max(1.0, 0.5 * static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) a(i, j) = uniform_centered(rng);
    a(j, j) += shift;
  }
  return a;
}

/// Entries uniform in [-0.5, 0.5], diagonal shifted by n/2.
inline DenseMatrix gen_dense(std::size_t n, Rng& rng) {
  if (n < 2) throw ValidationError("gen_dense: n must be at least 2");
  DenseMatrix a(n, n);
  for (std::size_t k = 0; k < a.size(); ++k) a.data()[k] = uniform_centered(rng);
  for (std::size_t i = 0; i < n; ++i) a(i, i) += 0.5 * static_cast<double>(n);
  return a;
}

enum class MatrixKind { Banded5, LowerTri, Sympd, Dense };

inline std::string_view to_string(MatrixKind k) noexcept {
  switch (k) {
    case MatrixKind::Banded5: return "banded";
    case MatrixKind::LowerTri: return "tri";
    case MatrixKind::Sympd: return "sympd";
    case MatrixKind::Dense: return "dense";
  }
  return "unknown";
}

inline std::optional<MatrixKind> parse_matrix_kind(std::string_view s) noexcept {
  for (MatrixKind k : {MatrixKind::Banded5, MatrixKind::LowerTri,
                       MatrixKind::Sympd, MatrixKind::Dense}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

inline DenseMatrix generate(MatrixKind kind, std::size_t n, Rng& rng) {
  switch (kind) {
    case MatrixKind::Banded5: return gen_banded(n, 5, rng);
    case MatrixKind::LowerTri: return gen_lower_tri(n, rng);
    case MatrixKind::Sympd: return gen_sympd(n, rng);
    case MatrixKind::Dense: break;
  }
  return gen_dense(n, rng);
}

struct BenchSystem {
  DenseMatrix a;
  DenseMatrix b;
};

/// The system timed for (seed, size, rep): A of the given kind and a
/// single right-hand side uniform in [0, 1).
inline BenchSystem bench_system(MatrixKind kind, std::uint64_t seed,
                                std::size_t n, std::size_t rep) {
  Rng rng = make_rng(seed, n, rep);
  DenseMatrix a = generate(kind, n, rng);
  DenseMatrix b(n, 1);
  for (std::size_t i = 0; i < n; ++i) b(i, 0) = uniform01(rng);
  return {std::move(a), std::move(b)};
}

struct BenchSpec {
  std::vector<std::size_t> sizes{100, 250, 500, 1000};
  std::size_t reps = 1000;
  MatrixKind matrix_kind = MatrixKind::Banded5;
  std::uint64_t seed = 0;

  void validate() const {
    if (sizes.empty()) throw ValidationError("bench: no sizes given");
    for (std::size_t n : sizes) {
      if (n < 2) throw ValidationError("bench: sizes must be at least 2");
    }
    if (reps < 1) throw ValidationError("bench: reps must be at least 1");
  }
};

struct BenchRow {
  std::size_t size = 0;
  double mean_standard_s = 0.0;
  double mean_adaptive_s = 0.0;
  double reduction_pct = 0.0;
  /// Largest relative residual over both solvers and all reps.
  double max_relative_residual = 0.0;
  /// Reps where the adaptive solver did not use the kind's intended method.
  std::size_t method_mismatches = 0;
};

inline double reduction_percent(double standard_s, double adaptive_s) noexcept {
  return 100.0 * (1.0 - adaptive_s / standard_s);
}

inline Method intended_method(MatrixKind kind) noexcept {
  switch (kind) {
    case MatrixKind::Banded5: return Method::BandedLU;
    case MatrixKind::LowerTri: return Method::TriangularLower;
    case MatrixKind::Sympd: return Method::CholeskySympd;
    case MatrixKind::Dense: break;
  }
  return Method::GeneralLU;
}

/// Times solve_general against solve on identical systems. One untimed
/// warm-up rep per size; the order of the two solvers alternates between
/// reps so neither always runs with the other's data already in cache.
inline std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  spec.validate();
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;

  for (std::size_t n : spec.sizes) {
    {
      const BenchSystem warm = bench_system(spec.matrix_kind, spec.seed, n, 0);
      (void)solve_general(warm.a, warm.b);
      (void)solve(warm.a, warm.b);
    }

    BenchRow row;
    row.size = n;
    double total_standard = 0.0;
    double total_adaptive = 0.0;
    for (std::size_t rep = 0; rep < spec.reps; ++rep) {
      const BenchSystem sys = bench_system(spec.matrix_kind, spec.seed, n, rep);

      auto time_standard = [&] {
        const auto t0 = clock::now();
        SolveOutcome out = solve_general(sys.a, sys.b);
        const auto t1 = clock::now();
        total_standard += std::chrono::duration<double>(t1 - t0).count();
        return out;
      };
      auto time_adaptive = [&] {
        const auto t0 = clock::now();
        SolveOutcome out = solve(sys.a, sys.b);
        const auto t1 = clock::now();
        total_adaptive += std::chrono::duration<double>(t1 - t0).count();
        return out;
      };

      SolveOutcome standard;
      SolveOutcome adaptive;
      if (rep % 2 == 0) {
        standard = time_standard();
        adaptive = time_adaptive();
      } else {
        adaptive = time_adaptive();
        standard = time_standard();
      }

      row.max_relative_residual =
          std::max({row.max_relative_residual, standard.report.relative_residual,
                    adaptive.report.relative_residual});
      if (adaptive.report.method_used != intended_method(spec.matrix_kind)) {
        ++row.method_mismatches;
      }
    }
    const double reps = static_cast<double>(spec.reps);
    row.mean_standard_s = total_standard / reps;
    row.mean_adaptive_s = total_adaptive / reps;
    row.reduction_pct = reduction_percent(row.mean_standard_s, row.mean_adaptive_s);
    rows.push_back(row);
  }
  return rows;
}

inline std::string format_table(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "%-14s %-12s %-12s %s\n", "matrix size",
                "standard", "adaptive", "reduction");
  out << line;
  for (const BenchRow& r : rows) {
    const std::string size = std::to_string(r.size) + "x" + std::to_string(r.size);
    std::snprintf(line, sizeof line, "%-14s %-12.3e %-12.3e %.2f%%\n",
                  size.c_str(), r.mean_standard_s, r.mean_adaptive_s,
                  r.reduction_pct);
    out << line;
  }
  return out.str();
}

inline std::string format_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "size,standard_s,adaptive_s,reduction_pct\n";
  char line[128];
  for (const BenchRow& r : rows) {
    std::snprintf(line, sizeof line, "%zu,%.9e,%.9e,%.6f\n", r.size,
                  r.mean_standard_s, r.mean_adaptive_s, r.reduction_pct);
    out << line;
  }
  return out.str();
}

}  // namespace adsolve

#endif  // ADSOLVE_BENCH_HPP_

#ifndef ADSOLVE_DETECT_HPP_
#define ADSOLVE_DETECT_HPP_

// Structure detectors for square column-major matrices. Each detector is a
// single pass (likely_sympd: one diagonal pass plus one pass over the strict
// lower triangle) and stops as soon as the structure is ruled out.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <vector>

#include "adsolve/config.hpp"
#include "adsolve/matrix.hpp"

namespace adsolve {

/// Anything with n_rows() and a const (i, j) element read. Detectors are
/// templates over this so tests can count element reads.
template <class M>
concept SquareMatrixView = requires(const M& m, std::size_t i) {
  { m.n_rows() } -> std::convertible_to<std::size_t>;
  { m(i, i) } -> std::convertible_to<double>;
};

enum class Triangle { Lower, Upper };

/// Number of positions of an n x n matrix inside the band (kl, ku).
constexpr std::size_t band_element_count(std::size_t n, std::size_t kl,
                                         std::size_t ku) noexcept {
  return n * (kl + ku + 1) - kl * (kl + 1) / 2 - ku * (ku + 1) / 2;
}

constexpr double band_density(std::size_t n, BandExtent e) noexcept {
  return static_cast<double>(band_element_count(n, e.kl, e.ku)) /
         (static_cast<double>(n) * static_cast<double>(n));
}

/// Tightest band holding every nonzero, or nullopt once the running band
/// covers more than density_limit of the matrix.
template <SquareMatrixView M>
std::optional<BandExtent> detect_banded(const M& a, double density_limit) {
  const std::size_t n = a.n_rows();
  BandExtent e;
  for (std::size_t j = 0; j < n; ++j) {
    // top of the column down to the diagonal: first nonzero fixes ku
    for (std::size_t i = 0; i < j; ++i) {
      if (a(i, j) != 0.0) {
        e.ku = std::max(e.ku, j - i);
        break;
      }
    }
    // diagonal down to the bottom: last nonzero fixes kl
    std::size_t last = j;
    for (std::size_t i = j + 1; i < n; ++i) {
      if (a(i, j) != 0.0) last = i;
    }
    e.kl = std::max(e.kl, last - j);

    if (band_density(n, e) > density_limit) return std::nullopt;
  }
  return e;
}

/// Lower if nothing above the diagonal is nonzero, else Upper if nothing
/// below it is. Exact comparison with 0.0.
template <SquareMatrixView M>
std::optional<Triangle> detect_triangular(const M& a) {
  const std::size_t n = a.n_rows();
  bool lower = true;
  bool upper = true;
  for (std::size_t j = 0; j < n && (lower || upper); ++j) {
    for (std::size_t i = 0; i < n && (lower || upper); ++i) {
      if (i == j) continue;
      if (a(i, j) != 0.0) {
        if (i < j) lower = false;
        else upper = false;
      }
    }
  }
  if (lower) return Triangle::Lower;
  if (upper) return Triangle::Upper;
  return std::nullopt;
}

/// Cheap necessary conditions for symmetric positive definiteness:
/// positive diagonal, symmetry within tol (absolute and relative),
/// largest-magnitude element on the diagonal, rough diagonal dominance.
/// tol = tol_multiplier * epsilon.
template <SquareMatrixView M>
bool likely_sympd(const M& a, double tol_multiplier = 100.0) {
  const std::size_t n = a.n_rows();
  const double tol = tol_multiplier * machine_epsilon();

  // diagonal cached so the second pass touches each off-diagonal once
  std::vector<double> diag(n);
  double max_diag = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = a(j, j);
    if (d <= 0.0) return false;
    if (d > max_diag) max_diag = d;
    diag[j] = d;
  }

  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double a_jj = diag[j];
    for (std::size_t i = j + 1; i < n; ++i) {
      const double a_ij = a(i, j);
      const double a_ji = a(j, i);
      const double abs_ij = std::abs(a_ij);
      const double abs_ji = std::abs(a_ji);

      const double delta = std::abs(a_ij - a_ji);
      if (delta > tol && delta > tol * std::max(abs_ij, abs_ji)) return false;
      if (abs_ij >= max_diag) return false;
      if (abs_ij + abs_ji >= diag[i] + a_jj) return false;
    }
  }
  return true;
}

/// First matching structure in the order banded, triangular, likely-sympd.
template <SquareMatrixView M>
StructureClass classify(const M& a, const SolverConfig& config = {}) {
  if (auto band = detect_banded(a, config.band_density_limit)) {
    return structure::Banded{*band};
  }
  if (auto tri = detect_triangular(a)) {
    if (*tri == Triangle::Lower) return structure::LowerTriangular{};
    return structure::UpperTriangular{};
  }
  if (likely_sympd(a, config.sympd_tol_multiplier)) {
    return structure::LikelySympd{};
  }
  return structure::General{};
}

/// Tightest band of a square matrix regardless of density.
template <SquareMatrixView M>
BandExtent band_extent(const M& a) {
  BandExtent e;
  const std::size_t n = a.n_rows();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (a(i, j) != 0.0) {
        if (i > j) e.kl = std::max(e.kl, i - j);
        else e.ku = std::max(e.ku, j - i);
      }
  return e;
}

}  // namespace adsolve

#endif  // ADSOLVE_DETECT_HPP_

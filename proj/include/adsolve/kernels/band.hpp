#ifndef ADSOLVE_KERNELS_BAND_HPP_
#define ADSOLVE_KERNELS_BAND_HPP_

// Banded LU in LAPACK band storage (xGBTRF/xGBTRS/xGBCON contracts).
//
// A banded n x n matrix with kl sub-diagonals and ku super-diagonals is kept
// in a (2*kl + ku + 1) x n array ab with A(i, j) at ab(kl + ku + i - j, j).
// The top kl rows start out zero and receive the fill produced by row
// interchanges during factorization.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "adsolve/errors.hpp"
#include "adsolve/kernels/norm_estimate.hpp"
#include "adsolve/matrix.hpp"

namespace adsolve {

class BandedStorage {
 public:
  BandedStorage(std::size_t n, std::size_t kl, std::size_t ku)
      : n_(n), kl_(kl), ku_(ku), ab_(2 * kl + ku + 1, n) {
    if (n > 0 && (kl >= n || ku >= n)) {
      throw ValidationError("band extents must be smaller than the order");
    }
  }

  std::size_t order() const noexcept { return n_; }
  std::size_t kl() const noexcept { return kl_; }
  std::size_t ku() const noexcept { return ku_; }
  /// Row of ab holding the main diagonal.
  std::size_t diagonal_row() const noexcept { return kl_ + ku_; }

  const DenseMatrix& ab() const noexcept { return ab_; }
  DenseMatrix& ab() noexcept { return ab_; }

  bool in_band(std::size_t i, std::size_t j) const noexcept {
    return i <= j + kl_ && j <= i + ku_;
  }

  /// Element (i, j) of the represented matrix; zero outside the band.
  double at(std::size_t i, std::size_t j) const noexcept {
    return in_band(i, j) ? ab_(kl_ + ku_ + i - j, j) : 0.0;
  }
  double& ref(std::size_t i, std::size_t j) noexcept {
    return ab_(kl_ + ku_ + i - j, j);
  }

 private:
  std::size_t n_;
  std::size_t kl_;
  std::size_t ku_;
  DenseMatrix ab_;
};

/// Copies the band (kl, ku) of a into band storage. Elements outside the
/// band are not read.
inline BandedStorage pack_band(const DenseMatrix& a, std::size_t kl,
                               std::size_t ku) {
  if (!a.is_square()) throw ValidationError("pack_band: matrix not square");
  const std::size_t n = a.n_rows();
  BandedStorage s(n, kl, ku);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t lo = j > ku ? j - ku : 0;
    const std::size_t hi = std::min(n - 1, j + kl);
    for (std::size_t i = lo; i <= hi; ++i) s.ref(i, j) = a(i, j);
  }
  return s;
}

inline DenseMatrix unpack_band(const BandedStorage& s) {
  const std::size_t n = s.order();
  DenseMatrix a(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t lo = j > s.ku() ? j - s.ku() : 0;
    const std::size_t hi = std::min(n - 1, j + s.kl());
    for (std::size_t i = lo; i <= hi; ++i) a(i, j) = s.at(i, j);
  }
  return a;
}

/// U occupies rows 0..kl+ku of ab (width kl+ku after pivoting), the
/// multipliers of L the kl rows below the diagonal row.
class BandFactor {
 public:
  const DenseMatrix& ab() const noexcept { return ab_; }
  std::span<const std::size_t> pivots() const noexcept { return pivots_; }
  std::size_t order() const noexcept { return n_; }
  std::size_t kl() const noexcept { return kl_; }
  std::size_t ku() const noexcept { return ku_; }
  double anorm() const noexcept { return anorm_; }

  void solve_in_place(std::span<double> b) const noexcept {
    const std::size_t n = n_;
    const std::size_t kv = kl_ + ku_;
    const double* ab = ab_.data();
    const std::size_t ld = ab_.n_rows();
    if (kl_ > 0 && n > 0) {
      for (std::size_t j = 0; j + 1 < n; ++j) {
        const std::size_t lm = std::min(kl_, n - 1 - j);
        if (pivots_[j] != j) std::swap(b[j], b[pivots_[j]]);
        const double bj = b[j];
        if (bj == 0.0) continue;
        const double* mult = ab + kv + 1 + j * ld;
        for (std::size_t r = 0; r < lm; ++r) b[j + 1 + r] -= mult[r] * bj;
      }
    }
    for (std::size_t j = n; j-- > 0;) {
      const double* col = ab + j * ld;
      b[j] /= col[kv];
      const double bj = b[j];
      if (bj == 0.0) continue;
      const std::size_t lo = j > kv ? j - kv : 0;
      for (std::size_t i = lo; i < j; ++i) b[i] -= bj * col[kv + i - j];
    }
  }

  void solve_transposed_in_place(std::span<double> b) const noexcept {
    const std::size_t n = n_;
    const std::size_t kv = kl_ + ku_;
    const double* ab = ab_.data();
    const std::size_t ld = ab_.n_rows();
    for (std::size_t j = 0; j < n; ++j) {
      const double* col = ab + j * ld;
      double t = b[j];
      const std::size_t lo = j > kv ? j - kv : 0;
      for (std::size_t i = lo; i < j; ++i) t -= col[kv + i - j] * b[i];
      b[j] = t / col[kv];
    }
    if (kl_ > 0 && n > 1) {
      for (std::size_t j = n - 1; j-- > 0;) {
        const std::size_t lm = std::min(kl_, n - 1 - j);
        const double* mult = ab + kv + 1 + j * ld;
        double t = b[j];
        for (std::size_t r = 0; r < lm; ++r) t -= b[j + 1 + r] * mult[r];
        b[j] = t;
        if (pivots_[j] != j) std::swap(b[j], b[pivots_[j]]);
      }
    }
  }

 private:
  friend BandFactor band_factor(const BandedStorage& s);
  BandFactor(DenseMatrix ab, std::vector<std::size_t> pivots, std::size_t n,
             std::size_t kl, std::size_t ku, double anorm)
      : ab_(std::move(ab)),
        pivots_(std::move(pivots)),
        n_(n),
        kl_(kl),
        ku_(ku),
        anorm_(anorm) {}

  DenseMatrix ab_;
  std::vector<std::size_t> pivots_;
  std::size_t n_;
  std::size_t kl_;
  std::size_t ku_;
  double anorm_;
};

inline double band_norm1(const BandedStorage& s) noexcept {
  const std::size_t n = s.order();
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t lo = j > s.ku() ? j - s.ku() : 0;
    const std::size_t hi = std::min(n - 1, j + s.kl());
    double sum = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) sum += std::abs(s.at(i, j));
    best = std::max(best, sum);
  }
  return best;
}

/// Partial-pivoted LU confined to the band: row interchanges reach at most
/// kl rows down, fill lands in the reserved top rows. Throws SingularError
/// on an exactly zero pivot.
inline BandFactor band_factor(const BandedStorage& s) {
  const std::size_t n = s.order();
  const std::size_t kl = s.kl();
  const std::size_t kv = s.kl() + s.ku();
  DenseMatrix ab = s.ab();
  const std::size_t ld = ab.n_rows();
  double* p = ab.data();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t r = 0; r < kl; ++r) p[r + j * ld] = 0.0;

  std::vector<std::size_t> pivots(n);
  std::size_t ju = 0;  // last column touched by the current U rows
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t km = std::min(kl, n - 1 - j);
    double* col = p + j * ld;

    std::size_t jp = 0;
    double best = std::abs(col[kv]);
    for (std::size_t r = 1; r <= km; ++r) {
      if (std::abs(col[kv + r]) > best) {
        best = std::abs(col[kv + r]);
        jp = r;
      }
    }
    pivots[j] = j + jp;
    if (col[kv + jp] == 0.0) throw SingularError(j);

    ju = std::max(ju, std::min(j + s.ku() + jp, n - 1));
    if (jp != 0) {
      // walk along original rows j and j+jp: stride ld-1 in ab
      for (std::size_t c = 0; c <= ju - j; ++c) {
        std::swap(p[(kv + jp - c) + (j + c) * ld], p[(kv - c) + (j + c) * ld]);
      }
    }
    if (km > 0) {
      const double inv = 1.0 / col[kv];
      for (std::size_t r = 1; r <= km; ++r) col[kv + r] *= inv;
      const double* mult = col + kv + 1;
      for (std::size_t c = 0; c < ju - j; ++c) {
        double* target = p + (j + 1 + c) * ld;
        const double u = target[kv - 1 - c];
        if (u == 0.0) continue;
        for (std::size_t r = 0; r < km; ++r) target[kv + r - c] -= mult[r] * u;
      }
    }
  }
  return BandFactor(std::move(ab), std::move(pivots), n, s.kl(), s.ku(),
                    band_norm1(s));
}

inline DenseMatrix band_solve(const BandFactor& f, const DenseMatrix& b) {
  if (b.n_rows() != f.order()) {
    throw ValidationError("band_solve: right-hand side row count mismatch");
  }
  DenseMatrix x = b;
  for (std::size_t k = 0; k < x.n_cols(); ++k) f.solve_in_place(x.col(k));
  return x;
}

inline double band_rcond(const BandFactor& f) {
  const double ainv = estimate_norm1(
      f.order(), [&](std::span<double> x) { f.solve_in_place(x); },
      [&](std::span<double> x) { f.solve_transposed_in_place(x); });
  return reciprocal_condition(f.anorm(), ainv);
}

}  // namespace adsolve

#endif  // ADSOLVE_KERNELS_BAND_HPP_

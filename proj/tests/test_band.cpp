#include <gtest/gtest.h>

#include "adsolve/bench.hpp"
#include "adsolve/kernels/band.hpp"
#include "adsolve/kernels/lu.hpp"
#include "oracles.hpp"

using namespace adsolve;

namespace {

DenseMatrix toeplitz_tridiagonal(std::size_t n, double lo, double mid, double hi) {
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = mid;
    if (i > 0) a(i, i - 1) = lo;
    if (i + 1 < n) a(i, i + 1) = hi;
  }
  return a;
}

DenseMatrix random_band(oracle::TestRng& rng, std::size_t n, std::size_t kl, std::size_t ku) {
  DenseMatrix a(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (i <= j + kl && j <= i + ku) a(i, j) = oracle::uniform(rng, -1, 1);
  return a;
}

}  // namespace

TEST(PackBand, Tridiagonal5x5MainDiagonalRow) {
  const DenseMatrix a{{1, 9, 0, 0, 0},
                      {6, 2, 8, 0, 0},
                      {0, 7, 3, 7, 0},
                      {0, 0, 8, 4, 6},
                      {0, 0, 0, 9, 5}};
  const BandedStorage s = pack_band(a, 1, 1);
  EXPECT_EQ(s.ab().n_rows(), 4u);
  EXPECT_EQ(s.diagonal_row(), 2u);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(s.ab()(2, j), static_cast<double>(j + 1));
  // super-diagonal row sits above, sub-diagonal below; top kl rows are fill
  EXPECT_EQ(s.ab()(1, 1), 9.0);
  EXPECT_EQ(s.ab()(3, 0), 6.0);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(s.ab()(0, j), 0.0);
}

TEST(PackBand, IdentityIsOneRow) {
  const BandedStorage s = pack_band(DenseMatrix::identity(6), 0, 0);
  EXPECT_EQ(s.ab(), DenseMatrix(1, 6, 1.0));
}

TEST(PackBand, RoundTrip) {
  oracle::TestRng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 25;
    const std::size_t kl = rng() % n, ku = rng() % n;
    const DenseMatrix a = random_band(rng, n, kl, ku);
    EXPECT_EQ(unpack_band(pack_band(a, kl, ku)), a);
  }
}

TEST(PackBand, DoesNotReadOutsideBand) {
  DenseMatrix a = toeplitz_tridiagonal(5, 1, 4, 1);
  a(4, 0) = 99.0;  // outside (1, 1)
  const DenseMatrix back = unpack_band(pack_band(a, 1, 1));
  EXPECT_EQ(back, toeplitz_tridiagonal(5, 1, 4, 1));
}

TEST(PackBand, RejectsOversizedExtent) {
  EXPECT_THROW(pack_band(DenseMatrix::identity(3), 3, 0), ValidationError);
}

TEST(BandFactor, IdentityHasNoSwaps) {
  const BandFactor f = band_factor(pack_band(DenseMatrix::identity(5), 1, 1));
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(f.pivots()[k], k);
    EXPECT_EQ(f.ab()(f.kl() + f.ku(), k), 1.0);
  }
}

TEST(BandFactor, SingularDiagonal) {
  try {
    band_factor(pack_band(DenseMatrix::diagonal({1, 0}), 0, 0));
    FAIL() << "expected SingularError";
  } catch (const SingularError& e) {
    EXPECT_EQ(e.column(), 1u);
  }
}

TEST(BandSolve, ToeplitzMatchesDenseLu) {
  const DenseMatrix a = toeplitz_tridiagonal(100, 1, 4, 1);
  oracle::TestRng rng(32);
  const DenseMatrix b = oracle::random_matrix(rng, 100, 1);
  const DenseMatrix xb = band_solve(band_factor(pack_band(a, 1, 1)), b);
  const DenseMatrix xd = lu_solve(lu_factor(a), b);
  EXPECT_LE(oracle::relative_error(xb, xd), 1e-10);
}

TEST(BandSolve, RecoversOnesVector) {
  const DenseMatrix a = toeplitz_tridiagonal(100, 1, 4, 1);
  const DenseMatrix b = multiply(a, DenseMatrix(100, 1, 1.0));
  const DenseMatrix x = band_solve(band_factor(pack_band(a, 1, 1)), b);
  for (double v : x.values()) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(BandSolve, Examples) {
  const DenseMatrix b{{1, 2}, {3, 4}, {5, 6}};
  EXPECT_EQ(band_solve(band_factor(pack_band(DenseMatrix::identity(3), 0, 0)), b), b);
  const DenseMatrix x = band_solve(band_factor(pack_band(DenseMatrix::diagonal({2, 4}), 0, 0)),
                                   DenseMatrix::column_vector({2, 8}));
  EXPECT_EQ(x, DenseMatrix::column_vector({1, 2}));
}

TEST(BandSolve, PivotingBandsMatchDenseLu) {
  // weak diagonals force row interchanges and fill into the reserved rows
  oracle::TestRng rng(33);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    const std::size_t kl = rng() % std::min<std::size_t>(n, 5);
    const std::size_t ku = rng() % std::min<std::size_t>(n, 5);
    DenseMatrix a = random_band(rng, n, kl, ku);
    for (std::size_t i = 0; i < n; ++i) a(i, i) *= 0.01;
    const DenseMatrix b = oracle::random_matrix(rng, n, 3);
    const double rc = oracle::exact_rcond(a);
    if (rc < 1e-8) continue;
    const DenseMatrix xb = band_solve(band_factor(pack_band(a, kl, ku)), b);
    const DenseMatrix xd = lu_solve(lu_factor(a), b);
    EXPECT_LE(oracle::relative_error(xb, xd), 10.0 * n * machine_epsilon() / rc)
        << "n=" << n << " kl=" << kl << " ku=" << ku;
  }
}

TEST(BandSolve, TransposedSolveMatchesDense) {
  oracle::TestRng rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 20;
    const std::size_t kl = rng() % std::min<std::size_t>(n, 4);
    const std::size_t ku = rng() % std::min<std::size_t>(n, 4);
    DenseMatrix a = random_band(rng, n, kl, ku);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 0.1;
    if (oracle::exact_rcond(a) < 1e-6) continue;
    const BandFactor f = band_factor(pack_band(a, kl, ku));
    DenseMatrix x = oracle::random_matrix(rng, n, 1);
    const DenseMatrix b = x;
    f.solve_transposed_in_place(x.col(0));
    const DenseMatrix back = multiply(transpose(a), x);
    EXPECT_LE(oracle::relative_error(back, b), 1e-9);
  }
}

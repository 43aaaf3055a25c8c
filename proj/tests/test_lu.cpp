#include <gtest/gtest.h>

#include "adsolve/bench.hpp"
#include "adsolve/kernels/lu.hpp"
#include "oracles.hpp"

using namespace adsolve;

namespace {

DenseMatrix permuted(const DenseMatrix& a, std::span<const std::size_t> pivots) {
  DenseMatrix pa = a;
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    if (pivots[k] == k) continue;
    for (std::size_t j = 0; j < pa.n_cols(); ++j) std::swap(pa(k, j), pa(pivots[k], j));
  }
  return pa;
}

DenseMatrix reconstruct(const LuFactor& f) {
  const std::size_t n = f.order();
  DenseMatrix l = DenseMatrix::identity(n), u(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (i > j) l(i, j) = f.lu()(i, j);
      else u(i, j) = f.lu()(i, j);
    }
  return multiply(l, u);
}

}  // namespace

TEST(LuFactor, Identity) {
  const LuFactor f = lu_factor(DenseMatrix::identity(4));
  EXPECT_EQ(f.lu(), DenseMatrix::identity(4));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(f.pivots()[k], k);
  EXPECT_EQ(f.anorm(), 1.0);
}

TEST(LuFactor, PermutationMatrixSwapsRows) {
  const LuFactor f = lu_factor(DenseMatrix{{0, 1}, {1, 0}});
  EXPECT_EQ(f.pivots()[0], 1u);
  EXPECT_EQ(f.pivots()[1], 1u);
  EXPECT_EQ(f.lu(), DenseMatrix::identity(2));
}

TEST(LuFactor, ExactlySingular) {
  try {
    lu_factor(DenseMatrix{{1, 2}, {2, 4}});
    FAIL() << "expected SingularError";
  } catch (const SingularError& e) {
    EXPECT_EQ(e.column(), 1u);
  }
}

TEST(LuFactor, FirstMaximumWinsPivotTie) {
  const LuFactor f = lu_factor(DenseMatrix{{1, 0, 0}, {-3, 1, 0}, {3, 0, 1}});
  EXPECT_EQ(f.pivots()[0], 1u);
}

TEST(LuFactor, ReconstructionAndPivotConvention) {
  oracle::TestRng rng(21);
  for (std::size_t n : {1u, 2u, 7u, 31u, 120u, 200u}) {
    const DenseMatrix a = oracle::random_matrix(rng, n, n);
    const LuFactor f = lu_factor(a);
    for (std::size_t k = 0; k < n; ++k) EXPECT_GE(f.pivots()[k], k);
    const DenseMatrix diff = subtract(permuted(a, f.pivots()), reconstruct(f));
    const double bound = 10.0 * n * machine_epsilon() * norm1(a);
    for (double v : diff.values()) ASSERT_LE(std::abs(v), bound) << "n=" << n;
  }
}

TEST(LuSolve, Examples) {
  const DenseMatrix b{{1, 2}, {3, 4}};
  EXPECT_EQ(lu_solve(lu_factor(DenseMatrix::identity(2)), b), b);
  EXPECT_EQ(lu_solve(lu_factor(DenseMatrix{{0, 1}, {1, 0}}), DenseMatrix::column_vector({3, 7})),
            DenseMatrix::column_vector({7, 3}));
  const DenseMatrix x = lu_solve(lu_factor(DenseMatrix{{2, 1}, {1, 3}}),
                                 DenseMatrix::column_vector({5, 10}));
  EXPECT_NEAR(x(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(x(1, 0), 3.0, 1e-15);
}

TEST(LuSolve, MultipleColumnsMatchSingleColumns) {
  oracle::TestRng rng(22);
  const DenseMatrix a = oracle::random_matrix(rng, 12, 12);
  const DenseMatrix b = oracle::random_matrix(rng, 12, 4);
  const LuFactor f = lu_factor(a);
  const DenseMatrix x = lu_solve(f, b);
  for (std::size_t k = 0; k < 4; ++k) {
    const DenseMatrix xk = lu_solve(f, DenseMatrix::column_vector(b.col(k)));
    for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(x(i, k), xk(i, 0));
  }
  EXPECT_THROW(lu_solve(f, DenseMatrix(11, 1)), ValidationError);
}

TEST(LuSolve, MatchesGaussJordanOracle) {
  oracle::TestRng rng(23);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    Rng gen = make_rng(trial, n, 23);
    const DenseMatrix a = n >= 2 ? gen_dense(n, gen) : oracle::random_matrix(rng, 1, 1, 0.5, 2);
    const DenseMatrix b = oracle::random_matrix(rng, n, 2);
    auto inv = oracle::gauss_jordan_inverse(a);
    ASSERT_TRUE(inv);
    if (oracle::exact_rcond(a) < 1e-6) continue;
    ++checked;
    const DenseMatrix want = oracle::naive_multiply(*inv, b);
    EXPECT_LE(oracle::relative_error(lu_solve(lu_factor(a), b), want), 1e-10);
  }
  EXPECT_GT(checked, 900);
}

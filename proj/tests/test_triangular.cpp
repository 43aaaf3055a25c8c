#include <gtest/gtest.h>

#include <utility>

#include "adsolve/kernels/lu.hpp"
#include "adsolve/kernels/triangular.hpp"
#include "oracles.hpp"

using namespace adsolve;

namespace {

DenseMatrix random_lower(oracle::TestRng& rng, std::size_t n) {
  DenseMatrix a(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    a(j, j) = oracle::uniform(rng, 1.0, 2.0);
    for (std::size_t i = j + 1; i < n; ++i) a(i, j) = oracle::uniform(rng, -1, 1) / n;
  }
  return a;
}

}  // namespace

TEST(TriSolve, Examples) {
  const DenseMatrix x = tri_solve(DenseMatrix{{1, 0}, {2, 1}}, DenseMatrix::column_vector({2, 5}),
                                  Triangle::Lower);
  EXPECT_EQ(x, DenseMatrix::column_vector({2, 1}));
  const DenseMatrix y = tri_solve(DenseMatrix{{2, 1}, {0, 4}}, DenseMatrix::column_vector({5, 4}),
                                  Triangle::Upper);
  EXPECT_EQ(y, DenseMatrix::column_vector({2, 1}));
}

TEST(TriSolve, ZeroDiagonalIsSingular) {
  try {
    tri_solve(DenseMatrix{{1, 0, 0}, {1, 0, 0}, {1, 1, 1}}, DenseMatrix(3, 1, 1.0),
              Triangle::Lower);
    FAIL() << "expected SingularError";
  } catch (const SingularError& e) {
    EXPECT_EQ(e.column(), 1u);
  }
}

TEST(TriSolve, NeverReadsOtherTriangle) {
  DenseMatrix a{{2, 0}, {1, 3}};
  const DenseMatrix b = DenseMatrix::column_vector({4, 5});
  const DenseMatrix want = tri_solve(a, b, Triangle::Lower);
  a(0, 1) = 1e300;
  EXPECT_EQ(tri_solve(a, b, Triangle::Lower), want);
}

TEST(TriSolve, AgreesWithLu) {
  oracle::TestRng rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    const DenseMatrix l = random_lower(rng, n);
    const DenseMatrix b = oracle::random_matrix(rng, n, 2);
    EXPECT_LE(oracle::relative_error(tri_solve(l, b, Triangle::Lower), lu_solve(lu_factor(l), b)),
              1e-12);
    const DenseMatrix u = transpose(l);
    EXPECT_LE(oracle::relative_error(tri_solve(u, b, Triangle::Upper), lu_solve(lu_factor(u), b)),
              1e-12);
  }
}

TEST(TriRcond, Examples) {
  EXPECT_EQ(tri_rcond(DenseMatrix::diagonal({2, 2}), Triangle::Lower), 1.0);
  EXPECT_EQ(tri_rcond(DenseMatrix{{1, 0}, {1, 0}}, Triangle::Lower), 0.0);
  EXPECT_EQ(tri_rcond(DenseMatrix{{0, 1}, {0, 1}}, Triangle::Upper), 0.0);
}

TEST(TriRcond, WithinFactorOfTen) {
  oracle::TestRng rng(72);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 30;
    DenseMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = j; i < n; ++i) l(i, j) = oracle::uniform(rng, -1, 1);
    for (std::size_t j = 0; j < n; ++j) l(j, j) += l(j, j) >= 0 ? 0.05 : -0.05;
    const DenseMatrix u = transpose(l);
    const std::pair<double, double> cases[] = {
        {tri_rcond(l, Triangle::Lower), oracle::exact_rcond(l)},
        {tri_rcond(u, Triangle::Upper), oracle::exact_rcond(u)}};
    for (auto [est, truth] : cases) {
      EXPECT_GE(est, oracle::rcond_lower_limit(truth, n)) << "n=" << n;
      EXPECT_LE(est, 10 * truth) << "n=" << n;
    }
  }
}

#ifndef ADSOLVE_KERNELS_SVD_HPP_
#define ADSOLVE_KERNELS_SVD_HPP_

// Thin SVD by one-sided (Hestenes) Jacobi, and the minimum-norm least
// squares solve built on it (xGELSD contract).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "adsolve/errors.hpp"
#include "adsolve/matrix.hpp"

namespace adsolve {

/// A = U diag(s) V^T with U m x r, V n x r, r = min(m, n), s descending.
struct SvdFactor {
  DenseMatrix u;
  std::vector<double> s;
  DenseMatrix v;
};

namespace detail {

inline double dot(const double* x, const double* y, std::size_t n) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

inline void rotate(double* x, double* y, std::size_t n, double c,
                   double s) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

/// Replaces column j of q (m x r) with a unit vector orthogonal to every
/// other column in keep. Picks the coordinate axis with the largest
/// remainder and orthogonalizes twice.
inline void complete_column(DenseMatrix& q, std::size_t j,
                            const std::vector<std::size_t>& keep) {
  const std::size_t m = q.n_rows();
  std::vector<double> best;
  double best_norm = -1.0;
  std::vector<double> w(m);
  for (std::size_t axis = 0; axis < m; ++axis) {
    std::fill(w.begin(), w.end(), 0.0);
    w[axis] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k : keep) {
        const double* qk = q.col(k).data();
        const double proj = dot(qk, w.data(), m);
        for (std::size_t i = 0; i < m; ++i) w[i] -= proj * qk[i];
      }
    }
    const double nrm = std::sqrt(dot(w.data(), w.data(), m));
    if (nrm > best_norm) {
      best_norm = nrm;
      best = w;
    }
    if (best_norm > 0.5) break;
  }
  double* qj = q.col(j).data();
  for (std::size_t i = 0; i < m; ++i) qj[i] = best[i] / best_norm;
}

// m >= n case.
inline SvdFactor jacobi_svd_tall(const DenseMatrix& a) {
  constexpr int kMaxSweeps = 30;
  const std::size_t m = a.n_rows();
  const std::size_t n = a.n_cols();
  const double tol = static_cast<double>(std::max(m, n)) * machine_epsilon();

  DenseMatrix w = a;
  DenseMatrix v = DenseMatrix::identity(n);

  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double* wp = w.col(p).data();
        double* wq = w.col(q).data();
        const double alpha = dot(wp, wp, m);
        const double beta = dot(wq, wq, m);
        const double gamma = dot(wp, wq, m);
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;

        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t =
            std::abs(zeta) > 1e150
                ? 0.5 / zeta
                : std::copysign(1.0, zeta) /
                      (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(wp, wq, m, c, s);
        rotate(v.col(p).data(), v.col(q).data(), n, c, s);
      }
    }
  }
  if (!converged) {
    throw ConvergenceError("Jacobi SVD did not converge within 30 sweeps");
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    norms[j] = std::sqrt(dot(w.col(j).data(), w.col(j).data(), m));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return norms[x] > norms[y];
  });

  SvdFactor out{DenseMatrix(m, n), std::vector<double>(n), DenseMatrix(n, n)};
  std::vector<std::size_t> done;
  std::vector<std::size_t> degenerate;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    const double sk = norms[src];
    out.s[k] = sk;
    std::copy_n(v.col(src).data(), n, out.v.col(k).data());
    if (sk > std::numeric_limits<double>::min()) {
      const double* ws = w.col(src).data();
      double* uk = out.u.col(k).data();
      for (std::size_t i = 0; i < m; ++i) uk[i] = ws[i] / sk;
      done.push_back(k);
    } else {
      out.s[k] = 0.0;
      degenerate.push_back(k);
    }
  }
  for (std::size_t k : degenerate) {
    complete_column(out.u, k, done);
    done.push_back(k);
  }
  return out;
}

}  // namespace detail

/// Thin SVD. Throws ConvergenceError if 30 Jacobi sweeps do not suffice.
inline SvdFactor svd(const DenseMatrix& a) {
  if (a.n_rows() >= a.n_cols()) return detail::jacobi_svd_tall(a);
  SvdFactor t = detail::jacobi_svd_tall(transpose(a));
  return SvdFactor{std::move(t.v), std::move(t.s), std::move(t.u)};
}

struct LeastSquaresResult {
  DenseMatrix x;
  std::size_t effective_rank = 0;
  std::vector<double> singular_values;
};

/// X = V diag(1/s_i for s_i > cutoff_ratio * s_max, else 0) U^T B, the
/// minimum-norm minimizer of ||B - A X||_2 column by column.
inline LeastSquaresResult lsq_min_norm(const DenseMatrix& a,
                                       const DenseMatrix& b,
                                       double cutoff_ratio = machine_epsilon()) {
  if (b.n_rows() != a.n_rows()) {
    throw ValidationError("lsq_min_norm: right-hand side row count mismatch");
  }
  SvdFactor f = svd(a);
  const std::size_t r = f.s.size();
  const double threshold = r == 0 ? 0.0 : cutoff_ratio * f.s[0];
  std::size_t rank = 0;
  while (rank < r && f.s[rank] > threshold && f.s[rank] > 0.0) ++rank;

  const std::size_t m = a.n_rows();
  const std::size_t n = a.n_cols();
  const std::size_t k = b.n_cols();
  DenseMatrix x(n, k);
  std::vector<double> c(rank);
  for (std::size_t col = 0; col < k; ++col) {
    const double* bc = b.col(col).data();
    for (std::size_t i = 0; i < rank; ++i) {
      c[i] = detail::dot(f.u.col(i).data(), bc, m) / f.s[i];
    }
    double* xc = x.col(col).data();
    for (std::size_t i = 0; i < rank; ++i) {
      const double* vi = f.v.col(i).data();
      for (std::size_t row = 0; row < n; ++row) xc[row] += vi[row] * c[i];
    }
  }
  return LeastSquaresResult{std::move(x), rank, std::move(f.s)};
}

}  // namespace adsolve

#endif  // ADSOLVE_KERNELS_SVD_HPP_

#ifndef ADSOLVE_MATRIX_HPP_
#define ADSOLVE_MATRIX_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace adsolve {

using Vector = std::vector<double>;

/// Gap between 1.0 and the next representable double.
constexpr double machine_epsilon() noexcept {
  return std::numeric_limits<double>::epsilon();
}

/// Column-major dense matrix of doubles. Element (i,j) lives at
/// offset i + j * n_rows().
class DenseMatrix {
 public:
  DenseMatrix() = default;

  DenseMatrix(std::size_t n_rows, std::size_t n_cols, double fill = 0.0)
      : n_rows_(n_rows), n_cols_(n_cols), data_(n_rows * n_cols, fill) {}

  DenseMatrix(std::size_t n_rows, std::size_t n_cols,
              std::vector<double> column_major)
      : n_rows_(n_rows), n_cols_(n_cols), data_(std::move(column_major)) {
    if (data_.size() != n_rows_ * n_cols_) {
      throw std::invalid_argument("DenseMatrix: data length != rows * cols");
    }
  }

  /// Row-wise literal, handy for small fixtures: {{1, 2}, {3, 4}}.
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    n_rows_ = rows.size();
    n_cols_ = n_rows_ == 0 ? 0 : rows.begin()->size();
    data_.assign(n_rows_ * n_cols_, 0.0);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != n_cols_) {
        throw std::invalid_argument("DenseMatrix: ragged initializer");
      }
      std::size_t j = 0;
      for (double v : row) {
        (*this)(i, j++) = v;
      }
      ++i;
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static DenseMatrix diagonal(std::span<const double> d) {
    DenseMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static DenseMatrix diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
  }

  /// n x 1 matrix holding v.
  static DenseMatrix column_vector(std::span<const double> v) {
    return DenseMatrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
  }

  static DenseMatrix column_vector(std::initializer_list<double> v) {
    return column_vector(std::span<const double>(v.begin(), v.size()));
  }

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return n_cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return n_rows_ == n_cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i + j * n_rows_];
  }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i + j * n_rows_];
  }

  std::span<double> col(std::size_t j) noexcept {
    return {data_.data() + j * n_rows_, n_rows_};
  }
  std::span<const double> col(std::size_t j) const noexcept {
    return {data_.data() + j * n_rows_, n_rows_};
  }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  std::span<const double> values() const noexcept { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<double> data_;
};

inline DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.n_cols(), a.n_rows());
  for (std::size_t j = 0; j < a.n_cols(); ++j)
    for (std::size_t i = 0; i < a.n_rows(); ++i) t(j, i) = a(i, j);
  return t;
}

/// a * b, jki loop order so the inner loop runs down contiguous columns.
inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.n_cols() != b.n_rows()) {
    throw std::invalid_argument("multiply: inner dimensions differ");
  }
  DenseMatrix c(a.n_rows(), b.n_cols());
  const std::size_t m = a.n_rows();
  for (std::size_t j = 0; j < b.n_cols(); ++j) {
    double* cj = c.col(j).data();
    for (std::size_t k = 0; k < a.n_cols(); ++k) {
      const double bkj = b(k, j);
      if (bkj == 0.0) continue;
      const double* ak = a.col(k).data();
      for (std::size_t i = 0; i < m; ++i) cj[i] += ak[i] * bkj;
    }
  }
  return c;
}

inline DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.n_rows() != b.n_rows() || a.n_cols() != b.n_cols()) {
    throw std::invalid_argument("subtract: shape mismatch");
  }
  DenseMatrix c = a;
  double* p = c.data();
  const double* q = b.data();
  for (std::size_t k = 0; k < c.size(); ++k) p[k] -= q[k];
  return c;
}

inline DenseMatrix scale(const DenseMatrix& a, double c) {
  DenseMatrix r = a;
  double* p = r.data();
  for (std::size_t k = 0; k < r.size(); ++k) p[k] *= c;
  return r;
}

/// Maximum absolute column sum.
inline double norm1(const DenseMatrix& a) noexcept {
  double best = 0.0;
  for (std::size_t j = 0; j < a.n_cols(); ++j) {
    double s = 0.0;
    for (double v : a.col(j)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

inline double norm1(std::span<const double> x) noexcept {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

inline bool all_finite(const DenseMatrix& a) noexcept {
  return std::all_of(a.values().begin(), a.values().end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace adsolve

#endif  // ADSOLVE_MATRIX_HPP_

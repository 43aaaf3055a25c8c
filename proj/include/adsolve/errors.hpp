#ifndef ADSOLVE_ERRORS_HPP_
#define ADSOLVE_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adsolve {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: non-finite values, shape mismatch, invalid configuration.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Exactly zero pivot (or zero diagonal for triangular systems) at a
/// zero-based column.
class SingularError : public Error {
 public:
  explicit SingularError(std::size_t column)
      : Error("matrix is exactly singular: zero pivot in column " +
              std::to_string(column)),
        column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// Cholesky pivot <= 0 at a zero-based column.
class NotPositiveDefiniteError : public Error {
 public:
  explicit NotPositiveDefiniteError(std::size_t column)
      : Error("matrix is not positive definite: non-positive pivot in column " +
              std::to_string(column)),
        column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// Raised by solve() when rcond falls below the gate and the SVD
/// fallback is disabled.
class PoorlyConditionedError : public Error {
 public:
  explicit PoorlyConditionedError(double rcond)
      : Error("system is poorly conditioned (rcond = " + std::to_string(rcond) +
              ")"),
        rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string reason)
      : Error("line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(std::move(reason)) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

}  // namespace adsolve

#endif  // ADSOLVE_ERRORS_HPP_

#ifndef ADSOLVE_IO_HPP_
#define ADSOLVE_IO_HPP_

// Matrix Market dense array files:
//
//   %%MatrixMarket matrix array real general
//   % optional comment lines
//   <rows> <cols>
//   <value>          one per line, column-major, rows*cols lines
//
// Values are written with 17 significant digits so a write/read cycle
// reproduces every finite double bit for bit.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "adsolve/errors.hpp"
#include "adsolve/matrix.hpp"

namespace adsolve {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_double(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  // from_chars also accepts nan and inf spellings
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

inline bool parse_count(std::string_view tok, std::size_t& out) {
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  // from_chars also accepts nan and inf spellings
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace detail

/// Parses a Matrix Market array stream. Line numbers in ParseError are
/// 1-based.
inline DenseMatrix parse_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line()) throw ParseError(1, "missing header");
  const auto header = detail::split_ws(line);
  if (header.size() == 5 && header[0] == "%%MatrixMarket" &&
      header[1] == "matrix" && header[2] == "coordinate") {
    throw ParseError(line_no, "coordinate (sparse) format is not supported");
  }
  if (header.size() != 5 || header[0] != "%%MatrixMarket" ||
      header[1] != "matrix" || header[2] != "array" || header[3] != "real" ||
      header[4] != "general") {
    throw ParseError(line_no,
                     "bad header, expected '%%MatrixMarket matrix array real "
                     "general'");
  }

  std::size_t rows = 0;
  std::size_t cols = 0;
  for (;;) {
    if (!next_line()) throw ParseError(line_no + 1, "missing size line");
    if (!line.empty() && line.front() == '%') continue;
    const auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 2 || !detail::parse_count(tok[0], rows) ||
        !detail::parse_count(tok[1], cols)) {
      throw ParseError(line_no, "bad size line, expected '<rows> <cols>'");
    }
    if (rows == 0 || cols == 0) {
      throw ParseError(line_no, "non-positive dimensions");
    }
    break;
  }

  const std::size_t expected = rows * cols;
  std::vector<double> values;
  values.reserve(expected);
  while (next_line()) {
    const auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 1) {
      throw ParseError(line_no, "expected one value per line");
    }
    double v = 0.0;
    if (!detail::parse_double(tok[0], v)) {
      throw ParseError(line_no, "non-numeric token '" + std::string(tok[0]) + "'");
    }
    if (values.size() == expected) {
      throw ParseError(line_no, "value count mismatch");
    }
    values.push_back(v);
  }
  if (values.size() != expected) {
    throw ParseError(line_no, "value count mismatch");
  }
  return DenseMatrix(rows, cols, std::move(values));
}

inline DenseMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return parse_matrix(in);
}

inline void format_matrix(std::ostream& out, const DenseMatrix& a) {
  if (a.n_rows() == 0 || a.n_cols() == 0) {
    throw ValidationError("cannot write a matrix with a zero dimension");
  }
  out << "%%MatrixMarket matrix array real general\n";
  out << a.n_rows() << ' ' << a.n_cols() << '\n';
  char buf[32];
  for (double v : a.values()) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    (void)ec;
    out.write(buf, ptr - buf);
    out.put('\n');
  }
}

inline void write_matrix(const std::filesystem::path& path,
                         const DenseMatrix& a) {
  if (a.n_rows() == 0 || a.n_cols() == 0) {
    throw ValidationError("cannot write a matrix with a zero dimension");
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  format_matrix(out, a);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace adsolve

#endif  // ADSOLVE_IO_HPP_

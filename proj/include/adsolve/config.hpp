#ifndef ADSOLVE_CONFIG_HPP_
#define ADSOLVE_CONFIG_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "adsolve/errors.hpp"
#include "adsolve/matrix.hpp"

namespace adsolve {

enum class Method {
  BandedLU,
  TriangularLower,
  TriangularUpper,
  CholeskySympd,
  GeneralLU,
  SvdFallback,
};

inline std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::BandedLU: return "banded-lu";
    case Method::TriangularLower: return "triangular-lower";
    case Method::TriangularUpper: return "triangular-upper";
    case Method::CholeskySympd: return "cholesky-sympd";
    case Method::GeneralLU: return "general-lu";
    case Method::SvdFallback: return "svd-fallback";
  }
  return "unknown";
}

inline std::optional<Method> parse_method(std::string_view s) noexcept {
  for (Method m : {Method::BandedLU, Method::TriangularLower,
                   Method::TriangularUpper, Method::CholeskySympd,
                   Method::GeneralLU, Method::SvdFallback}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

struct SolverConfig {
  /// Largest fraction of in-band elements for which a matrix still counts
  /// as banded.
  double band_density_limit = 0.25;
  /// Symmetry tolerance of likely_sympd is this multiple of epsilon.
  double sympd_tol_multiplier = 100.0;
  /// Systems whose estimated rcond is below this go to the SVD fallback.
  double rcond_threshold = 0.5 * machine_epsilon();
  bool allow_fallback = true;
  /// Singular values below lsq_cutoff_ratio * s_max are treated as zero.
  double lsq_cutoff_ratio = machine_epsilon();
  /// Skip detection and use this method. The rcond gate still applies.
  std::optional<Method> force_method;

  void validate() const {
    if (!(band_density_limit > 0.0 && band_density_limit <= 1.0))
      throw ValidationError("band_density_limit must be in (0, 1]");
    if (!(sympd_tol_multiplier > 0.0))
      throw ValidationError("sympd_tol_multiplier must be positive");
    if (!(rcond_threshold >= 0.0 && rcond_threshold < 1.0))
      throw ValidationError("rcond_threshold must be in [0, 1)");
    if (!(lsq_cutoff_ratio >= 0.0 && lsq_cutoff_ratio < 1.0))
      throw ValidationError("lsq_cutoff_ratio must be in [0, 1)");
  }
};

struct BandExtent {
  std::size_t kl = 0;  // sub-diagonals
  std::size_t ku = 0;  // super-diagonals
  friend bool operator==(const BandExtent&, const BandExtent&) = default;
};

namespace structure {
struct Banded {
  BandExtent extent;
  friend bool operator==(const Banded&, const Banded&) = default;
};
struct LowerTriangular {
  friend bool operator==(const LowerTriangular&, const LowerTriangular&) = default;
};
struct UpperTriangular {
  friend bool operator==(const UpperTriangular&, const UpperTriangular&) = default;
};
struct LikelySympd {
  friend bool operator==(const LikelySympd&, const LikelySympd&) = default;
};
struct General {
  friend bool operator==(const General&, const General&) = default;
};
}  // namespace structure

using StructureClass =
    std::variant<structure::Banded, structure::LowerTriangular,
                 structure::UpperTriangular, structure::LikelySympd,
                 structure::General>;

inline std::string to_string(const StructureClass& c) {
  struct Visitor {
    std::string operator()(const structure::Banded& b) const {
      return "banded kl=" + std::to_string(b.extent.kl) +
             " ku=" + std::to_string(b.extent.ku);
    }
    std::string operator()(structure::LowerTriangular) const {
      return "lower-triangular";
    }
    std::string operator()(structure::UpperTriangular) const {
      return "upper-triangular";
    }
    std::string operator()(structure::LikelySympd) const {
      return "likely-sympd";
    }
    std::string operator()(structure::General) const { return "general"; }
  };
  return std::visit(Visitor{}, c);
}

struct SolveReport {
  Method method_used = Method::GeneralLU;
  /// Estimated 1-norm reciprocal condition number of the kernel that ran,
  /// 0 after an exact-singularity failure.
  double rcond = 0.0;
  bool fallback_taken = false;
  /// Number of retained singular values; set only for SvdFallback.
  std::optional<std::size_t> effective_rank;
  /// ||A X - B||_1 / (||A||_1 ||X||_1 + ||B||_1)
  double relative_residual = 0.0;
};

}  // namespace adsolve

#endif  // ADSOLVE_CONFIG_HPP_

// Solve a random symmetric positive definite system and show which path
// the adaptive solver took.

#include <cstdio>

#include "adsolve/adsolve.hpp"

int main() {
  adsolve::Rng rng = adsolve::make_rng(42, 100, 0);

  // A = R'R + I, R uniform in [-0.5, 0.5]
  adsolve::DenseMatrix a = adsolve::gen_sympd(100, rng);

  adsolve::DenseMatrix b(100, 1);
  for (std::size_t i = 0; i < b.n_rows(); ++i) b(i, 0) = adsolve::uniform01(rng);

  const adsolve::SolveOutcome out = adsolve::solve(a, b);

  std::printf("structure: %s\n", adsolve::to_string(adsolve::classify(a)).c_str());
  std::printf("method:    %s\n", std::string(adsolve::to_string(out.report.method_used)).c_str());
  std::printf("rcond:     %.4e\n", out.report.rcond);
  std::printf("residual:  %.4e\n", out.report.relative_residual);
  std::printf("x[0..4]:   %.6f %.6f %.6f %.6f %.6f\n", out.x(0, 0), out.x(1, 0),
              out.x(2, 0), out.x(3, 0), out.x(4, 0));
  return 0;
}

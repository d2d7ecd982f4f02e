#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace madcdf {

struct RichardsonConfig {
  double h0 = 0.1;
  int max_levels = 6;
  double tol = 1e-8;
  /// Smallest usable step; unset means 1e-12 * max(1, |v|).
  std::optional<double> min_h;
};

/// (f(v + h) - f(v - h)) / (2h). Throws Error{NonFiniteEvaluation}.
[[nodiscard]] double central_diff(const std::function<double(double)>& f, double v, double h);

/// Full Richardson tableau of central differences. Row k uses step h0 / 2^k;
/// column j cancels the h^(2j) error term:
///   T[k][j] = (4^j T[k][j-1] - T[k-1][j-1]) / (4^j - 1).
struct RichardsonTableau {
  std::vector<std::vector<double>> rows;
  std::vector<double> steps;
};

[[nodiscard]] RichardsonTableau richardson_tableau(const std::function<double(double)>& f, double v,
                                                   const RichardsonConfig& cfg);

/// Returns the first diagonal entry T[k][k] whose change from T[k-1][k-1] is
/// below cfg.tol, or the deepest diagonal entry. Levels whose step would fall
/// under min_h are dropped; Error{StepUnderflow} if h0 itself is too small.
[[nodiscard]] double richardson_derivative(const std::function<double(double)>& f, double v,
                                           const RichardsonConfig& cfg);

}  // namespace madcdf

#pragma once

#include <span>
#include <vector>

namespace madcdf {

struct IsotonicProblem {
  std::vector<double> y;
  std::vector<double> w;  // positive, same length as y
  double lo;
  double hi;
};

/// Least-squares projection of y onto {lo <= a_1 <= ... <= a_n <= hi} under
/// weights w. Adjacent violators are pooled into blocks of weighted means, and
/// each block value is then clamped into [lo, hi]; with constant bounds this
/// gives the same answer as the max-min formula clipped to the bounds.
/// Throws Error{BadWeights} or Error{BoundsInverted}.
[[nodiscard]] std::vector<double> bounded_isotonic(const IsotonicProblem& p);

/// Equal-weight convenience overload.
[[nodiscard]] std::vector<double> bounded_isotonic(std::span<const double> y, double lo, double hi);

}  // namespace madcdf

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "madcdf/sample.hpp"

namespace madcdf {

struct MadPoint {
  double v;
  double delta;
  double delta_plus;
  double delta_minus;
  double line_left;   // mean - v
  double line_right;  // v - mean
};

/// Data behind a MAD plot: the MAD function and its two branches on a grid,
/// together with the two straight lines crossing at the mean.
struct MadCurve {
  std::vector<MadPoint> points;
  double mean = 0.0;
  double median = 0.0;
  double min_delta = 0.0;  // delta at the median
};

/// Evaluates the curve on `grid` (strictly increasing, finite), or on the
/// order statistics when no grid is given. Throws Error{InvalidGrid}.
[[nodiscard]] MadCurve build_mad_curve(const Sample& s, std::optional<std::span<const double>> grid = std::nullopt);

/// `count` equally spaced points spanning the sample range.
[[nodiscard]] std::vector<double> uniform_grid(const Sample& s, std::size_t count);

}  // namespace madcdf

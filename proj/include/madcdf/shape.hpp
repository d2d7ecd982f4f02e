#pragma once

#include <cstddef>

#include "madcdf/distributions.hpp"
#include "madcdf/sample.hpp"

namespace madcdf {

/// Wideness, tightness, tail and skewness measures read off the MAD curve.
///
/// All ratios are standardized by the population standard deviation (divisor
/// n), so they are invariant under positive affine maps of the data.
/// delta_max_r / delta_max_l are the maxima of the right and left MAD branches
/// over the sample, reached at the extremes: x_(n) - mean and mean - x_(1).
struct ShapeSummary {
  double w_r = 0.0;   // right wideness, delta_plus(median) / sd
  double w_l = 0.0;   // left wideness, delta_minus(median) / sd
  double w = 0.0;     // total wideness, delta(median) / sd
  double l = 0.0;     // tightness, 1 - w
  double t_r = 0.0;   // delta_max_r / sd
  double t_l = 0.0;   // delta_max_l / sd
  double t_r1 = 0.0;  // sd / delta_max_r (infinity when delta_max_r is 0)
  double t_l1 = 0.0;  // sd / delta_max_l (infinity when delta_max_l is 0)
  double sk1 = 0.0;   // w_r - w_l == (mean - median) / sd
  double sk2 = 0.0;   // t_r - t_l
  double sk21 = 0.0;  // t_l1 - t_r1
  double mean = 0.0;
  double median = 0.0;
  double sd_pop = 0.0;
  double mad_about_median = 0.0;
  double delta_max_r = 0.0;
  double delta_max_l = 0.0;
  double pearson_skew = 0.0;  // m3 / m2^(3/2)
  double pearson_kurt = 0.0;  // m4 / m2^2, not excess
};

/// Throws Error{TooSmall} for n < 2 and Error{DegenerateSample} when sd is 0.
[[nodiscard]] ShapeSummary shape_summary(const Sample& s);

/// Shape of a distribution through the quantile pseudo-sample
/// Q((i - 0.5) / grid_n), i = 1..grid_n. grid_n must be at least 100.
[[nodiscard]] ShapeSummary theoretical_shape(const DistSpec& d, std::size_t grid_n);

}  // namespace madcdf

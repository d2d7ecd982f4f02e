#include "madcdf/shape.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "madcdf/error.hpp"

namespace madcdf {

ShapeSummary shape_summary(const Sample& s) {
  if (s.size() < 2) throw Error(ErrorCode::TooSmall, "shape measures need at least two observations");
  if (s.sd_pop() == 0.0) throw Error(ErrorCode::DegenerateSample, "all observations are equal");

  ShapeSummary r;
  r.mean = s.mean();
  r.median = s.median();
  r.sd_pop = s.sd_pop();
  r.mad_about_median = s.mad_about_median();
  const double sd = r.sd_pop;

  const double plus_at_median = s.delta_plus(r.median);
  const double minus_at_median = s.delta_minus(r.median);
  r.w_r = plus_at_median / sd;
  r.w_l = minus_at_median / sd;
  r.w = (plus_at_median + minus_at_median) / sd;
  r.l = 1.0 - r.w;

  r.delta_max_r = s.max() - r.mean;
  r.delta_max_l = r.mean - s.min();
  r.t_r = r.delta_max_r / sd;
  r.t_l = r.delta_max_l / sd;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  r.t_r1 = r.delta_max_r > 0.0 ? sd / r.delta_max_r : kInf;
  r.t_l1 = r.delta_max_l > 0.0 ? sd / r.delta_max_l : kInf;

  r.sk1 = r.w_r - r.w_l;
  r.sk2 = r.t_r - r.t_l;
  r.sk21 = r.t_l1 - r.t_r1;

  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double x : s.values()) {
    const double d = x - r.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double n = static_cast<double>(s.size());
  m2 /= n;
  m3 /= n;
  m4 /= n;
  r.pearson_skew = m3 / std::pow(m2, 1.5);
  r.pearson_kurt = m4 / (m2 * m2);
  return r;
}

ShapeSummary theoretical_shape(const DistSpec& d, std::size_t grid_n) {
  if (grid_n < 100) throw Error(ErrorCode::TooSmall, "quantile grid needs at least 100 points");
  std::vector<double> pseudo(grid_n);
  const double n = static_cast<double>(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    pseudo[i] = quantile(d, (static_cast<double>(i) + 0.5) / n);
  }
  return shape_summary(Sample(pseudo));
}

}  // namespace madcdf

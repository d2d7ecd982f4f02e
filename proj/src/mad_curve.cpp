#include "madcdf/mad_curve.hpp"

#include <cmath>
#include <string>

#include "madcdf/error.hpp"

namespace madcdf {

namespace {

MadPoint evaluate(const Sample& s, double v) {
  const double plus = s.delta_plus(v);
  const double minus = s.delta_minus(v);
  return {v, plus + minus, plus, minus, s.mean() - v, v - s.mean()};
}

}  // namespace

MadCurve build_mad_curve(const Sample& s, std::optional<std::span<const double>> grid) {
  MadCurve curve;
  curve.mean = s.mean();
  curve.median = s.median();
  curve.min_delta = s.delta(s.median());

  if (!grid) {
    const auto xs = s.values();
    curve.points.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i > 0 && xs[i] == xs[i - 1]) continue;
      curve.points.push_back(evaluate(s, xs[i]));
    }
    return curve;
  }

  const auto g = *grid;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!std::isfinite(g[i])) throw Error(ErrorCode::InvalidGrid, "grid point " + std::to_string(i) + " is not finite");
    if (i > 0 && !(g[i] > g[i - 1])) {
      throw Error(ErrorCode::InvalidGrid, "grid is not strictly increasing at index " + std::to_string(i));
    }
  }
  curve.points.reserve(g.size());
  for (double v : g) curve.points.push_back(evaluate(s, v));
  return curve;
}

std::vector<double> uniform_grid(const Sample& s, std::size_t count) {
  if (count < 2) throw Error(ErrorCode::InvalidGrid, "grid needs at least two points");
  if (s.range() == 0.0) throw Error(ErrorCode::InvalidGrid, "sample has zero range");
  std::vector<double> grid(count);
  const double step = s.range() / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = s.min() + step * static_cast<double>(i);
  grid.back() = s.max();
  return grid;
}

}  // namespace madcdf

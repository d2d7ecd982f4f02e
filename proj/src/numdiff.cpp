#include "madcdf/numdiff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "madcdf/error.hpp"

namespace madcdf {

namespace {

void validate(const RichardsonConfig& cfg) {
  if (!(cfg.h0 > 0.0) || !std::isfinite(cfg.h0)) throw Error(ErrorCode::InvalidConfig, "h0 must be positive");
  if (cfg.max_levels < 1) throw Error(ErrorCode::InvalidConfig, "max_levels must be at least 1");
  if (!(cfg.tol > 0.0)) throw Error(ErrorCode::InvalidConfig, "tol must be positive");
  if (cfg.min_h && !(*cfg.min_h > 0.0)) throw Error(ErrorCode::InvalidConfig, "min_h must be positive");
}

}  // namespace

double central_diff(const std::function<double(double)>& f, double v, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidConfig, "step must be positive");
  const double up = f(v + h);
  const double down = f(v - h);
  if (!std::isfinite(up) || !std::isfinite(down)) {
    throw Error(ErrorCode::NonFiniteEvaluation, "function is not finite near v = " + std::to_string(v));
  }
  return (up - down) / (2.0 * h);
}

RichardsonTableau richardson_tableau(const std::function<double(double)>& f, double v, const RichardsonConfig& cfg) {
  validate(cfg);
  const double min_h = cfg.min_h.value_or(1e-12 * std::max(1.0, std::abs(v)));
  if (cfg.h0 <= min_h) throw Error(ErrorCode::StepUnderflow, "initial step is below the step floor");

  RichardsonTableau t;
  double h = cfg.h0;
  for (int k = 0; k < cfg.max_levels && h > min_h; ++k, h *= 0.5) {
    std::vector<double> row(static_cast<std::size_t>(k) + 1);
    row[0] = central_diff(f, v, h);
    double factor = 1.0;
    for (std::size_t j = 1; j < row.size(); ++j) {
      factor *= 4.0;
      row[j] = (factor * row[j - 1] - t.rows.back()[j - 1]) / (factor - 1.0);
    }
    t.rows.push_back(std::move(row));
    t.steps.push_back(h);
  }
  return t;
}

double richardson_derivative(const std::function<double(double)>& f, double v, const RichardsonConfig& cfg) {
  const RichardsonTableau t = richardson_tableau(f, v, cfg);
  for (std::size_t k = 1; k < t.rows.size(); ++k) {
    if (std::abs(t.rows[k][k] - t.rows[k - 1][k - 1]) < cfg.tol) return t.rows[k][k];
  }
  return t.rows.back().back();
}

}  // namespace madcdf

#include "madcdf/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "madcdf/error.hpp"

namespace madcdf {

Sample::Sample(std::span<const double> data) {
  if (data.empty()) throw Error(ErrorCode::EmptyInput, "sample needs at least one value");
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i])) {
      throw Error(ErrorCode::NonFiniteValue, "value at index " + std::to_string(i) + " is not finite");
    }
  }
  values_.assign(data.begin(), data.end());
  std::sort(values_.begin(), values_.end());

  const std::size_t n = values_.size();
  const double nd = static_cast<double>(n);

  below_.assign(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    below_[k] = below_[k - 1] + static_cast<double>(k) * (values_[k] - values_[k - 1]);
  }
  above_.assign(n, 0.0);
  for (std::size_t k = n - 1; k-- > 0;) {
    above_[k] = above_[k + 1] + static_cast<double>(n - 1 - k) * (values_[k + 1] - values_[k]);
  }

  // Mean via the smallest value plus the mean offset keeps the sum well conditioned.
  mean_ = values_.front() + above_.front() / nd;
  if (mean_ > values_.back()) mean_ = values_.back();

  median_ = n % 2 == 1 ? values_[n / 2] : 0.5 * (values_[n / 2 - 1] + values_[n / 2]);

  double ss = 0.0;
  double abs_dev = 0.0;
  for (double x : values_) {
    const double d = x - mean_;
    ss += d * d;
    abs_dev += std::abs(x - median_);
  }
  sd_pop_ = std::sqrt(ss / nd);
  mad_median_ = abs_dev / nd;
  if (values_.front() == values_.back()) {
    sd_pop_ = 0.0;
    mad_median_ = 0.0;
  }
}

double Sample::lower_median() const noexcept {
  const std::size_t n = values_.size();
  return n % 2 == 1 ? values_[n / 2] : values_[n / 2 - 1];
}

double Sample::upper_median() const noexcept { return values_[values_.size() / 2]; }

std::size_t Sample::count_le(double v) const noexcept {
  return static_cast<std::size_t>(std::upper_bound(values_.begin(), values_.end(), v) - values_.begin());
}

double Sample::delta_minus(double v) const noexcept {
  const std::size_t k = count_le(v);
  if (k == 0) return 0.0;
  const double top = values_[k - 1];
  return (static_cast<double>(k) * (v - top) + below_[k - 1]) / static_cast<double>(values_.size());
}

double Sample::delta_plus(double v) const noexcept {
  const std::size_t k = count_le(v);
  const std::size_t n = values_.size();
  if (k == n) return 0.0;
  const double bottom = values_[k];
  return (static_cast<double>(n - k) * (bottom - v) + above_[k]) / static_cast<double>(n);
}

std::vector<double> Sample::left_mad_series() const {
  std::vector<double> y(values_.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = delta_minus(values_[i]);
  return y;
}

}  // namespace madcdf

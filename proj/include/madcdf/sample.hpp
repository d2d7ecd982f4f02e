#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace madcdf {

/// A sorted, immutable sample of finite reals with cached summary statistics.
///
/// Dispersion is population-style: sd_pop() divides by n, not n - 1. The
/// empirical MAD functions are evaluated in O(log n) from cumulative sums of
/// within-sample deviations, which are all nonnegative, so no large
/// cancelling terms appear even for data far from the origin.
class Sample {
 public:
  /// Throws Error{EmptyInput} or Error{NonFiniteValue} (message names the index).
  explicit Sample(std::span<const double> data);
  explicit Sample(const std::vector<double>& data) : Sample(std::span<const double>(data)) {}

  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] double min() const noexcept { return values_.front(); }
  [[nodiscard]] double max() const noexcept { return values_.back(); }
  [[nodiscard]] double range() const noexcept { return values_.back() - values_.front(); }

  [[nodiscard]] double mean() const noexcept { return mean_; }
  /// Midpoint of the two central order statistics for even n.
  [[nodiscard]] double median() const noexcept { return median_; }
  [[nodiscard]] double lower_median() const noexcept;
  [[nodiscard]] double upper_median() const noexcept;
  [[nodiscard]] double sd_pop() const noexcept { return sd_pop_; }
  [[nodiscard]] double mad_about_median() const noexcept { return mad_median_; }

  /// Number of observations <= v.
  [[nodiscard]] std::size_t count_le(double v) const noexcept;

  /// Left MAD: (1/n) sum over x_j <= v of (v - x_j).
  [[nodiscard]] double delta_minus(double v) const noexcept;
  /// Right MAD: (1/n) sum over x_j > v of (x_j - v).
  [[nodiscard]] double delta_plus(double v) const noexcept;
  /// Mean absolute deviation about v; defined as delta_plus(v) + delta_minus(v).
  [[nodiscard]] double delta(double v) const noexcept { return delta_plus(v) + delta_minus(v); }

  /// Left MAD evaluated at every order statistic: y_i = delta_minus(x_(i)).
  [[nodiscard]] std::vector<double> left_mad_series() const;

 private:
  std::vector<double> values_;
  // below_[k] = sum_{j<k} (x_(k) - x_(j)), 0-based.
  std::vector<double> below_;
  // above_[k] = sum_{j>k} (x_(j) - x_(k)), 0-based.
  std::vector<double> above_;
  double mean_ = 0.0;
  double median_ = 0.0;
  double sd_pop_ = 0.0;
  double mad_median_ = 0.0;
};

}  // namespace madcdf

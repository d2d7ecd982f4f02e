#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "madcdf/sample.hpp"

namespace madcdf {

// Standard normal helpers. normal_quantile is a rational approximation
// refined by one Halley step against erfc; relative error is near machine
// precision across (0, 1).
[[nodiscard]] double normal_pdf(double z) noexcept;
[[nodiscard]] double normal_cdf(double z) noexcept;
[[nodiscard]] double normal_quantile(double p);

/// Regularized incomplete beta I_x(a, b).
[[nodiscard]] double incomplete_beta(double a, double b, double x);

enum class DistKind { Normal, Logistic, Laplace, Uniform, Beta, T3, Exponential, Mixture };

struct MixtureComponent {
  double weight;
  double mu;
  double sigma;
};

class DistSpec {
 public:
  static DistSpec normal(double mu = 0.0, double sigma = 1.0);
  static DistSpec logistic(double location = 0.0, double scale = 1.0);
  static DistSpec laplace(double location = 0.0, double scale = 1.0);
  static DistSpec uniform(double lower = 0.0, double upper = 1.0);
  static DistSpec beta(double a, double b);
  static DistSpec student_t3();
  static DistSpec exponential(double rate = 1.0);
  /// Weights must be positive and sum to 1 within 1e-12.
  static DistSpec mixture(std::vector<MixtureComponent> components, std::string name = "mixture");

  [[nodiscard]] DistKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] double param(std::size_t i) const { return params_.at(i); }
  [[nodiscard]] std::span<const MixtureComponent> components() const noexcept { return components_; }

 private:
  DistSpec(DistKind kind, std::string name, std::array<double, 2> params)
      : kind_(kind), name_(std::move(name)), params_(params) {}

  DistKind kind_;
  std::string name_;
  std::array<double, 2> params_{};
  std::vector<MixtureComponent> components_;
};

[[nodiscard]] double cdf(const DistSpec& d, double x);
[[nodiscard]] double density(const DistSpec& d, double x);
/// Throws Error{OutOfRange} unless 0 < p < 1.
[[nodiscard]] double quantile(const DistSpec& d, double p);
/// E|X - v|; normal and mixture only, otherwise Error{UnsupportedKind}.
[[nodiscard]] double population_mad(const DistSpec& d, double v);

enum class ScVariant { MarronWand, PaperLiteral };

/// The five benchmark mixtures by short name: G, SS, OU, SB, SC.
[[nodiscard]] DistSpec builtin(std::string_view name, ScVariant sc_variant = ScVariant::MarronWand);
[[nodiscard]] std::vector<std::string> builtin_names();

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

/// Counter-based uniform stream: Philox4x32-10 keyed by the master seed, with
/// the stream id and a draw counter forming the counter block.
class UniformStream {
 public:
  explicit UniformStream(SeedSpec seed) noexcept;
  /// Uniform in the open interval (0, 1) with 53 random bits.
  double next() noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_{};
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int available_ = 0;
};

/// Raw Philox4x32-10 block function.
[[nodiscard]] std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                                     std::array<std::uint32_t, 2> key) noexcept;

/// n i.i.d. draws by inverse-CDF transform; mixtures pick a component by
/// weight with one uniform and draw the normal with the next.
[[nodiscard]] std::vector<double> draw(const DistSpec& d, std::size_t n, SeedSpec seed);
[[nodiscard]] Sample sample_n(const DistSpec& d, std::size_t n, SeedSpec seed);

}  // namespace madcdf

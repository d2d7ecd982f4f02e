#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "madcdf/numdiff.hpp"
#include "madcdf/sample.hpp"

namespace madcdf {

/// Distribution-function estimators built from derivatives of the empirical
/// left MAD function.
enum class Method {
  Empirical,
  Forward,
  Backward,
  Centre,
  Fch,  // FC-Hermite average of forward and backward quotients
  Obc,  // mean of forward, backward and centre quotients
  RichardsonRaw,
  RichardsonAdjusted,
};

[[nodiscard]] std::string_view to_string(Method m) noexcept;
/// Accepts the names printed by to_string plus "richardson" for the adjusted
/// estimator. Throws Error{UnknownName}.
[[nodiscard]] Method parse_method(std::string_view name);
[[nodiscard]] const std::vector<Method>& all_methods();

struct CdfPoint {
  double v;
  double p;
};

/// One point per distinct order statistic, v strictly increasing. At tied
/// values the estimate at the last tied index is kept.
struct CdfEstimate {
  Method method = Method::Empirical;
  std::vector<CdfPoint> points;
  bool monotone = true;
  std::size_t n = 0;
};

/// How the initial Richardson step is derived from the data.
enum class StepRule {
  /// step_scale * min(sd, IQR / 1.349) / sqrt(n); falls back to sd when the IQR is 0.
  RobustSpread,
  /// step_scale * (x_(n) - x_(1)) / sqrt(n).
  Range,
};

struct RichardsonOptions {
  /// Initial step; overrides the rule when set.
  std::optional<double> h0;
  StepRule rule = StepRule::RobustSpread;
  double step_scale = 2.5;
  /// Two levels give the single extrapolation (4 G(h) - G(2h)) / 3 with
  /// h = h0 / 2. Deeper tableaux drive the finest step inside the gaps between
  /// order statistics, where the quotient degenerates to (2i - 1) / (2n).
  int max_levels = 2;
  double tol = 1e-8;
};

[[nodiscard]] double default_richardson_step(const Sample& s, const RichardsonOptions& opts = {});

[[nodiscard]] CdfEstimate estimate_empirical(const Sample& s);
[[nodiscard]] CdfEstimate estimate_forward(const Sample& s);
[[nodiscard]] CdfEstimate estimate_backward(const Sample& s);
[[nodiscard]] CdfEstimate estimate_centre(const Sample& s);
[[nodiscard]] CdfEstimate estimate_fch(const Sample& s);
[[nodiscard]] CdfEstimate estimate_obc(const Sample& s);
[[nodiscard]] CdfEstimate estimate_richardson_raw(const Sample& s, const RichardsonOptions& opts = {});
[[nodiscard]] CdfEstimate estimate_richardson_adjusted(const Sample& s, const RichardsonOptions& opts = {});
[[nodiscard]] CdfEstimate estimate(const Sample& s, Method m, const RichardsonOptions& opts = {});

/// Bounded isotonic projection of a raw estimate onto monotone values in
/// [0, 1]. Each point is weighted by its multiplicity over n (1/n without ties).
[[nodiscard]] CdfEstimate monotonize(const CdfEstimate& raw, const Sample& s);

/// Difference quotients of the left MAD series, one value per order
/// statistic, computed literally from (x_(i), y_i). Defined only for tie-free
/// samples; throws Error{DegenerateSample} on ties. Empirical and the
/// Richardson methods have no quotient path (Error{UnsupportedKind}).
[[nodiscard]] std::vector<double> difference_quotients(const Sample& s, Method m);

struct ConfidencePoint {
  double v;
  double lo;
  double hi;
};

/// Normal-approximation pointwise band p -/+ z sqrt(p(1 - p) / n), clipped
/// to [0, 1]. Throws Error{NotMonotone} or Error{InvalidLevel}.
[[nodiscard]] std::vector<ConfidencePoint> pointwise_ci(const CdfEstimate& e, double level);

struct QuantileResult {
  double value;
  bool clamped;  // prob fell outside [p_first, p_last]
};

/// Inverts the estimate by linear interpolation of v against p.
/// Throws Error{NotMonotone}, Error{TooFewPoints} or Error{OutOfRange}.
[[nodiscard]] QuantileResult quantile_from_estimate(const CdfEstimate& e, double prob);

}  // namespace madcdf

#include "madcdf/cdf_estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "madcdf/distributions.hpp"
#include "madcdf/error.hpp"
#include "madcdf/isotonic.hpp"

namespace madcdf {

namespace {

void require_size(const Sample& s, std::size_t min_n, Method m) {
  if (s.size() < min_n) {
    throw Error(ErrorCode::TooSmall, std::string(to_string(m)) + " needs at least " + std::to_string(min_n) +
                                         " observations, got " + std::to_string(s.size()));
  }
}

// Evaluates `value(i)` (1-based order-statistic index) at the last index of
// every run of tied values.
template <class Fn>
CdfEstimate collapse_ties(const Sample& s, Method m, Fn&& value) {
  const auto x = s.values();
  CdfEstimate e;
  e.method = m;
  e.n = s.size();
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k + 1 < x.size() && x[k + 1] == x[k]) continue;
    e.points.push_back({x[k], value(k + 1)});
  }
  return e;
}

// (x_(i) - x_(i-1)) / (x_(i+1) - x_(i-1)) for 1-based interior i; 1/2 when the
// outer pair coincides.
double spacing_ratio(std::span<const double> x, std::size_t i) {
  const double outer = x[i] - x[i - 2];
  if (outer == 0.0) return 0.5;
  return (x[i - 1] - x[i - 2]) / outer;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Empirical: return "empirical";
    case Method::Forward: return "forward";
    case Method::Backward: return "backward";
    case Method::Centre: return "centre";
    case Method::Fch: return "fch";
    case Method::Obc: return "obc";
    case Method::RichardsonRaw: return "richardson_raw";
    case Method::RichardsonAdjusted: return "richardson_adjusted";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : all_methods()) {
    if (name == to_string(m)) return m;
  }
  if (name == "richardson") return Method::RichardsonAdjusted;
  if (name == "center") return Method::Centre;
  throw Error(ErrorCode::UnknownName, "unknown estimator '" + std::string(name) + "'");
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = {Method::Empirical, Method::Forward,       Method::Backward,
                                              Method::Centre,    Method::Fch,           Method::Obc,
                                              Method::RichardsonRaw, Method::RichardsonAdjusted};
  return methods;
}

double default_richardson_step(const Sample& s, const RichardsonOptions& opts) {
  const double root_n = std::sqrt(static_cast<double>(s.size()));
  if (opts.rule == StepRule::Range) return opts.step_scale * s.range() / root_n;
  // Type-7 quartiles.
  const auto x = s.values();
  auto quartile = [&](double prob) {
    const double pos = prob * static_cast<double>(x.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, x.size() - 1);
    return x[lo] + (pos - static_cast<double>(lo)) * (x[hi] - x[lo]);
  };
  const double iqr = quartile(0.75) - quartile(0.25);
  const double spread = iqr > 0.0 ? std::min(s.sd_pop(), iqr / 1.349) : s.sd_pop();
  return opts.step_scale * spread / root_n;
}

CdfEstimate estimate_empirical(const Sample& s) {
  const double n = static_cast<double>(s.size());
  return collapse_ties(s, Method::Empirical, [n](std::size_t i) { return static_cast<double>(i) / n; });
}

CdfEstimate estimate_forward(const Sample& s) {
  require_size(s, 2, Method::Forward);
  const double n = static_cast<double>(s.size());
  return collapse_ties(s, Method::Forward, [n](std::size_t i) { return static_cast<double>(i) / n; });
}

CdfEstimate estimate_backward(const Sample& s) {
  require_size(s, 2, Method::Backward);
  const double n = static_cast<double>(s.size());
  return collapse_ties(s, Method::Backward, [n](std::size_t i) { return static_cast<double>(i - 1) / n; });
}

CdfEstimate estimate_centre(const Sample& s) {
  require_size(s, 3, Method::Centre);
  const auto x = s.values();
  const std::size_t size = s.size();
  const double n = static_cast<double>(size);
  return collapse_ties(s, Method::Centre, [&](std::size_t i) {
    if (i == 1) return 1.0 / n;
    if (i == size) return (n - 1.0) / n;
    return static_cast<double>(i) / n - spacing_ratio(x, i) / n;
  });
}

CdfEstimate estimate_fch(const Sample& s) {
  require_size(s, 3, Method::Fch);
  const std::size_t size = s.size();
  const double n = static_cast<double>(size);
  return collapse_ties(s, Method::Fch, [&](std::size_t i) {
    if (i == 1) return 1.0 / n;
    if (i == size) return (n - 1.0) / n;
    return (2.0 * static_cast<double>(i) - 1.0) / (2.0 * n);
  });
}

CdfEstimate estimate_obc(const Sample& s) {
  require_size(s, 3, Method::Obc);
  const auto x = s.values();
  const std::size_t size = s.size();
  const double n = static_cast<double>(size);
  return collapse_ties(s, Method::Obc, [&](std::size_t i) {
    if (i == 1) return 1.0 / n;
    if (i == size) return (n - 1.0) / n;
    return (3.0 * static_cast<double>(i) - 1.0) / (3.0 * n) - spacing_ratio(x, i) / (3.0 * n);
  });
}

CdfEstimate estimate_richardson_raw(const Sample& s, const RichardsonOptions& opts) {
  require_size(s, 3, Method::RichardsonRaw);
  if (s.range() == 0.0) throw Error(ErrorCode::DegenerateSample, "Richardson estimator needs a sample with spread");
  RichardsonConfig cfg;
  cfg.h0 = opts.h0 ? *opts.h0 : default_richardson_step(s, opts);
  cfg.max_levels = opts.max_levels;
  cfg.tol = opts.tol;
  const std::function<double(double)> left_mad = [&s](double v) { return s.delta_minus(v); };
  CdfEstimate e =
      collapse_ties(s, Method::RichardsonRaw, [&](std::size_t i) { return richardson_derivative(left_mad, s[i - 1], cfg); });
  // Raw Richardson values may leave [0, 1] or decrease; monotonize() repairs both.
  e.monotone = false;
  return e;
}

CdfEstimate monotonize(const CdfEstimate& raw, const Sample& s) {
  IsotonicProblem problem;
  problem.lo = 0.0;
  problem.hi = 1.0;
  const double n = static_cast<double>(s.size());
  for (const CdfPoint& pt : raw.points) {
    problem.y.push_back(pt.p);
    // Multiplicity of this value among the order statistics.
    const auto range = std::equal_range(s.values().begin(), s.values().end(), pt.v);
    const auto count = std::max<std::ptrdiff_t>(1, range.second - range.first);
    problem.w.push_back(static_cast<double>(count) / n);
  }
  const std::vector<double> fitted = bounded_isotonic(problem);
  CdfEstimate e = raw;
  e.method = Method::RichardsonAdjusted;
  e.monotone = true;
  for (std::size_t i = 0; i < fitted.size(); ++i) e.points[i].p = fitted[i];
  return e;
}

CdfEstimate estimate_richardson_adjusted(const Sample& s, const RichardsonOptions& opts) {
  return monotonize(estimate_richardson_raw(s, opts), s);
}

CdfEstimate estimate(const Sample& s, Method m, const RichardsonOptions& opts) {
  switch (m) {
    case Method::Empirical: return estimate_empirical(s);
    case Method::Forward: return estimate_forward(s);
    case Method::Backward: return estimate_backward(s);
    case Method::Centre: return estimate_centre(s);
    case Method::Fch: return estimate_fch(s);
    case Method::Obc: return estimate_obc(s);
    case Method::RichardsonRaw: return estimate_richardson_raw(s, opts);
    case Method::RichardsonAdjusted: return estimate_richardson_adjusted(s, opts);
  }
  throw Error(ErrorCode::UnknownName, "unknown estimator");
}

std::vector<double> difference_quotients(const Sample& s, Method m) {
  const auto x = s.values();
  const std::size_t n = x.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (x[i] == x[i - 1]) throw Error(ErrorCode::DegenerateSample, "difference quotients are undefined at ties");
  }
  const std::vector<double> y = s.left_mad_series();
  // 0-based helpers over consecutive and skip-one pairs.
  auto fwd = [&](std::size_t k) { return (y[k + 1] - y[k]) / (x[k + 1] - x[k]); };
  auto bwd = [&](std::size_t k) { return (y[k] - y[k - 1]) / (x[k] - x[k - 1]); };
  auto ctr = [&](std::size_t k) { return (y[k + 1] - y[k - 1]) / (x[k + 1] - x[k - 1]); };

  std::vector<double> p(n);
  switch (m) {
    case Method::Forward:
      require_size(s, 2, m);
      for (std::size_t k = 0; k + 1 < n; ++k) p[k] = fwd(k);
      p[n - 1] = 1.0;
      return p;
    case Method::Backward:
      require_size(s, 2, m);
      p[0] = 0.0;
      for (std::size_t k = 1; k < n; ++k) p[k] = bwd(k);
      return p;
    case Method::Centre:
    case Method::Fch:
    case Method::Obc:
      require_size(s, 3, m);
      p[0] = fwd(0);
      p[n - 1] = bwd(n - 1);
      for (std::size_t k = 1; k + 1 < n; ++k) {
        if (m == Method::Centre) {
          p[k] = ctr(k);
        } else if (m == Method::Fch) {
          p[k] = 0.5 * (fwd(k) + bwd(k));
        } else {
          p[k] = (bwd(k) + ctr(k) + fwd(k)) / 3.0;
        }
      }
      return p;
    default:
      throw Error(ErrorCode::UnsupportedKind, std::string(to_string(m)) + " has no difference-quotient path");
  }
}

std::vector<ConfidencePoint> pointwise_ci(const CdfEstimate& e, double level) {
  if (!e.monotone) throw Error(ErrorCode::NotMonotone, "confidence bands need a monotone estimate");
  if (!(level > 0.0 && level < 1.0)) throw Error(ErrorCode::InvalidLevel, "confidence level must lie in (0, 1)");
  if (e.n == 0) throw Error(ErrorCode::TooSmall, "estimate has no source observations");
  const double z = normal_quantile(0.5 + 0.5 * level);
  const double n = static_cast<double>(e.n);
  std::vector<ConfidencePoint> band;
  band.reserve(e.points.size());
  for (const CdfPoint& pt : e.points) {
    const double p = std::clamp(pt.p, 0.0, 1.0);
    const double half = z * std::sqrt(p * (1.0 - p) / n);
    band.push_back({pt.v, std::clamp(p - half, 0.0, 1.0), std::clamp(p + half, 0.0, 1.0)});
  }
  return band;
}

QuantileResult quantile_from_estimate(const CdfEstimate& e, double prob) {
  if (!e.monotone) throw Error(ErrorCode::NotMonotone, "quantiles need a monotone estimate");
  if (e.points.size() < 2) throw Error(ErrorCode::TooFewPoints, "quantiles need at least two points");
  if (!(prob > 0.0 && prob < 1.0)) throw Error(ErrorCode::OutOfRange, "probability must lie in (0, 1)");
  const auto& pts = e.points;
  if (prob < pts.front().p) return {pts.front().v, true};
  if (prob > pts.back().p) return {pts.back().v, true};
  const auto it = std::lower_bound(pts.begin(), pts.end(), prob, [](const CdfPoint& pt, double q) { return pt.p < q; });
  if (it->p == prob || it == pts.begin()) return {it->v, false};
  const CdfPoint& lo = *(it - 1);
  const CdfPoint& hi = *it;
  const double t = (prob - lo.p) / (hi.p - lo.p);
  return {lo.v + t * (hi.v - lo.v), false};
}

}  // namespace madcdf

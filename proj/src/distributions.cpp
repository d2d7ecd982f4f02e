#include "madcdf/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "madcdf/error.hpp"

namespace madcdf {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Safeguarded Newton on a monotone cdf over the bracket [lo, hi].
template <class Cdf, class Pdf>
double invert_monotone(Cdf&& cdf_fn, Pdf&& pdf_fn, double p, double lo, double hi, double x) {
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double err = cdf_fn(x) - p;
    if (err == 0.0) return x;
    if (err < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double width_tol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
    if (hi - lo <= width_tol) break;

    const double density = pdf_fn(x);
    double next = density > 0.0 ? x - err / density : lo - 1.0;
    if (!(next > lo && next < hi)) {
      next = (lo > 0.0 && hi > 4.0 * lo) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    }
    if (std::abs(next - x) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Continued fraction for the incomplete beta, modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 1000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double beta_pdf(double a, double b, double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b));
}

double beta_lower_quantile(double a, double b, double p) {
  // Lower-tail power approximation, I_x(a, b) ~ x^a / (a B(a, b)).
  double guess = std::exp((std::log(p) + std::log(a) + log_beta(a, b)) / a);
  if (!(guess > 0.0 && guess < 1.0)) guess = 0.5;
  return invert_monotone([&](double x) { return incomplete_beta(a, b, x); },
                         [&](double x) { return beta_pdf(a, b, x); }, p, 0.0, 1.0, guess);
}

double t3_cdf(double t) {
  // F(-|t|) = (phi - sin(phi) cos(phi)) / pi with phi = atan(sqrt(3) / |t|).
  const double phi = std::atan2(std::numbers::sqrt3, std::abs(t));
  const double lower = (phi - std::sin(phi) * std::cos(phi)) / std::numbers::pi;
  return t < 0.0 ? lower : 1.0 - lower;
}

double t3_pdf(double t) {
  const double u = 1.0 + t * t / 3.0;
  return 2.0 / (std::numbers::pi * std::numbers::sqrt3 * u * u);
}

double mixture_pdf(const DistSpec& d, double x) {
  double f = 0.0;
  for (const auto& c : d.components()) f += c.weight * normal_pdf((x - c.mu) / c.sigma) / c.sigma;
  return f;
}

double density_impl(const DistSpec& d, double x) {
  const double p0 = d.kind() == DistKind::Mixture ? 0.0 : d.param(0);
  const double p1 = d.kind() == DistKind::Mixture ? 0.0 : d.param(1);
  switch (d.kind()) {
    case DistKind::Normal: return normal_pdf((x - p0) / p1) / p1;
    case DistKind::Logistic: {
      const double e = std::exp(-std::abs(x - p0) / p1);
      return e / (p1 * (1.0 + e) * (1.0 + e));
    }
    case DistKind::Laplace: return std::exp(-std::abs(x - p0) / p1) / (2.0 * p1);
    case DistKind::Uniform: return (x >= p0 && x <= p1) ? 1.0 / (p1 - p0) : 0.0;
    case DistKind::Beta: return beta_pdf(p0, p1, x);
    case DistKind::T3: return t3_pdf(x);
    case DistKind::Exponential: return x < 0.0 ? 0.0 : p0 * std::exp(-p0 * x);
    case DistKind::Mixture: return mixture_pdf(d, x);
  }
  return 0.0;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::InvalidConfig, std::string(what) + " must be positive");
}

}  // namespace

double normal_pdf(double z) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double density(const DistSpec& d, double x) { return density_impl(d, x); }

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z * kInvSqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::OutOfRange, "normal quantile needs 0 < p < 1");
  // Acklam's rational approximation, |relative error| < 1.15e-9 before refinement.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01, -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  double x;
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - kLow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley step. The upper half is refined through the complement so the
  // residual keeps full relative precision.
  if (p < 0.5) {
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  } else {
    const double e = normal_cdf(-x) - (1.0 - p);
    const double u = -e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

DistSpec DistSpec::normal(double mu, double sigma) {
  require_positive(sigma, "normal sigma");
  return DistSpec(DistKind::Normal, "normal", {mu, sigma});
}

DistSpec DistSpec::logistic(double location, double scale) {
  require_positive(scale, "logistic scale");
  return DistSpec(DistKind::Logistic, "logistic", {location, scale});
}

DistSpec DistSpec::laplace(double location, double scale) {
  require_positive(scale, "laplace scale");
  return DistSpec(DistKind::Laplace, "laplace", {location, scale});
}

DistSpec DistSpec::uniform(double lower, double upper) {
  if (!(upper > lower)) throw Error(ErrorCode::InvalidConfig, "uniform needs lower < upper");
  return DistSpec(DistKind::Uniform, "uniform", {lower, upper});
}

DistSpec DistSpec::beta(double a, double b) {
  require_positive(a, "beta shape a");
  require_positive(b, "beta shape b");
  return DistSpec(DistKind::Beta, "beta", {a, b});
}

DistSpec DistSpec::student_t3() { return DistSpec(DistKind::T3, "t3", {3.0, 0.0}); }

DistSpec DistSpec::exponential(double rate) {
  require_positive(rate, "exponential rate");
  return DistSpec(DistKind::Exponential, "exponential", {rate, 0.0});
}

DistSpec DistSpec::mixture(std::vector<MixtureComponent> components, std::string name) {
  if (components.empty()) throw Error(ErrorCode::InvalidConfig, "mixture needs at least one component");
  double total = 0.0;
  for (const auto& c : components) {
    require_positive(c.weight, "mixture weight");
    require_positive(c.sigma, "mixture sigma");
    if (!std::isfinite(c.mu)) throw Error(ErrorCode::InvalidConfig, "mixture mean must be finite");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::InvalidConfig, "mixture weights must sum to 1");
  DistSpec d(DistKind::Mixture, std::move(name), {0.0, 0.0});
  d.components_ = std::move(components);
  return d;
}

double cdf(const DistSpec& d, double x) {
  switch (d.kind()) {
    case DistKind::Normal: return normal_cdf((x - d.param(0)) / d.param(1));
    case DistKind::Logistic: {
      const double z = (x - d.param(0)) / d.param(1);
      return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
    }
    case DistKind::Laplace: {
      const double z = (x - d.param(0)) / d.param(1);
      return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
    }
    case DistKind::Uniform: return std::clamp((x - d.param(0)) / (d.param(1) - d.param(0)), 0.0, 1.0);
    case DistKind::Beta: return incomplete_beta(d.param(0), d.param(1), x);
    case DistKind::T3: return t3_cdf(x);
    case DistKind::Exponential: return x <= 0.0 ? 0.0 : -std::expm1(-d.param(0) * x);
    case DistKind::Mixture: {
      double f = 0.0;
      for (const auto& c : d.components()) f += c.weight * normal_cdf((x - c.mu) / c.sigma);
      return std::min(f, 1.0);
    }
  }
  return 0.0;
}

double quantile(const DistSpec& d, double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::OutOfRange, "quantile needs 0 < p < 1");
  switch (d.kind()) {
    case DistKind::Normal: return d.param(0) + d.param(1) * normal_quantile(p);
    case DistKind::Logistic: return d.param(0) + d.param(1) * (std::log(p) - std::log1p(-p));
    case DistKind::Laplace:
      return p < 0.5 ? d.param(0) + d.param(1) * std::log(2.0 * p) : d.param(0) - d.param(1) * std::log(2.0 * (1.0 - p));
    case DistKind::Uniform: return d.param(0) + p * (d.param(1) - d.param(0));
    case DistKind::Exponential: return -std::log1p(-p) / d.param(0);
    case DistKind::Beta: {
      const double a = d.param(0);
      const double b = d.param(1);
      if (p <= 0.5) return beta_lower_quantile(a, b, p);
      return 1.0 - beta_lower_quantile(b, a, 1.0 - p);
    }
    case DistKind::T3: {
      // Solve in the upper half by symmetry.
      const double q = p < 0.5 ? 1.0 - p : p;
      // Upper tail behaves like 1 - F(t) ~ 2 sqrt(3) / (pi t^3).
      const double tail = std::cbrt(2.0 * std::numbers::sqrt3 / (std::numbers::pi * (1.0 - q)));
      const double t = invert_monotone(t3_cdf, t3_pdf, q, 0.0, 2.0 * tail + 10.0, tail);
      return p < 0.5 ? -t : t;
    }
    case DistKind::Mixture: {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      double guess = 0.0;
      for (const auto& c : d.components()) {
        lo = std::min(lo, c.mu - 12.0 * c.sigma);
        hi = std::max(hi, c.mu + 12.0 * c.sigma);
        guess += c.weight * c.mu;
      }
      return invert_monotone([&](double x) { return cdf(d, x); }, [&](double x) { return mixture_pdf(d, x); }, p, lo,
                             hi, guess);
    }
  }
  throw Error(ErrorCode::QuantileUnavailable, "no quantile for " + d.name());
}

double population_mad(const DistSpec& d, double v) {
  auto component = [v](double mu, double sigma) {
    // E|X - v| = sigma [2 phi(z) + |z| (1 - 2 Phi(-|z|))]
    const double z = std::abs(v - mu) / sigma;
    return sigma * (2.0 * normal_pdf(z) + z * (1.0 - 2.0 * normal_cdf(-z)));
  };
  switch (d.kind()) {
    case DistKind::Normal: return component(d.param(0), d.param(1));
    case DistKind::Mixture: {
      double total = 0.0;
      for (const auto& c : d.components()) total += c.weight * component(c.mu, c.sigma);
      return total;
    }
    default: throw Error(ErrorCode::UnsupportedKind, "population MAD is available for normal and mixtures only");
  }
}

DistSpec builtin(std::string_view name, ScVariant sc_variant) {
  if (name == "G") return DistSpec::mixture({{1.0, 0.0, 1.0}}, "G");
  if (name == "SS") {
    std::vector<MixtureComponent> cs;
    for (int l = 0; l <= 7; ++l) {
      const double r = std::pow(2.0 / 3.0, l);
      cs.push_back({1.0 / 8.0, 3.0 * (r - 1.0), r});
    }
    return DistSpec::mixture(std::move(cs), "SS");
  }
  if (name == "OU") return DistSpec::mixture({{0.1, 0.0, 1.0}, {0.9, 0.0, 0.1}}, "OU");
  if (name == "SB") return DistSpec::mixture({{0.5, -1.5, 0.5}, {0.5, 1.5, 0.5}}, "SB");
  if (name == "SC") {
    std::vector<MixtureComponent> cs;
    for (int l = 0; l <= 5; ++l) {
      const double two_l = std::ldexp(1.0, l);
      const double sd = sc_variant == ScVariant::MarronWand ? (32.0 / 63.0) / two_l : std::pow(32.0 / 63.0, l);
      cs.push_back({std::ldexp(1.0, 5 - l) / 63.0, (65.0 - 96.0 / two_l) / 21.0, sd});
    }
    return DistSpec::mixture(std::move(cs), "SC");
  }
  throw Error(ErrorCode::UnknownName, "unknown distribution '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() { return {"G", "SS", "OU", "SB", "SC"}; }

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) noexcept {
  constexpr std::uint64_t kM0 = 0xD2511F53u;
  constexpr std::uint64_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = kM0 * ctr[0];
    const std::uint64_t p1 = kM1 * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

UniformStream::UniformStream(SeedSpec seed) noexcept
    : key_{static_cast<std::uint32_t>(seed.master_seed), static_cast<std::uint32_t>(seed.master_seed >> 32)},
      stream_(seed.stream_id) {}

void UniformStream::refill() noexcept {
  const auto out = philox4x32({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                               static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                              key_);
  ++block_;
  buffer_[0] = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  buffer_[1] = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
  available_ = 2;
}

double UniformStream::next() noexcept {
  if (available_ == 0) refill();
  const std::uint64_t bits = buffer_[2 - available_];
  --available_;
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> draw(const DistSpec& d, std::size_t n, SeedSpec seed) {
  UniformStream stream(seed);
  std::vector<double> out(n);
  if (d.kind() == DistKind::Mixture) {
    const auto cs = d.components();
    for (auto& x : out) {
      const double pick = stream.next();
      std::size_t idx = 0;
      double acc = cs[0].weight;
      while (pick > acc && idx + 1 < cs.size()) acc += cs[++idx].weight;
      x = cs[idx].mu + cs[idx].sigma * normal_quantile(stream.next());
    }
    return out;
  }
  for (auto& x : out) x = quantile(d, stream.next());
  return out;
}

Sample sample_n(const DistSpec& d, std::size_t n, SeedSpec seed) {
  if (n == 0) throw Error(ErrorCode::EmptyInput, "sample size must be at least 1");
  return Sample(draw(d, n, seed));
}

}  // namespace madcdf

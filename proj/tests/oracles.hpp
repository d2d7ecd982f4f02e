#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Everything here is deliberately naive: direct sums in long double, brute
// force enumeration, no shared code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

inline double delta_minus(const std::vector<double>& x, double v) {
  long double s = 0;
  for (double xi : x)
    if (xi <= v) s += static_cast<long double>(v) - xi;
  return static_cast<double>(s / x.size());
}

inline double delta_plus(const std::vector<double>& x, double v) {
  long double s = 0;
  for (double xi : x)
    if (xi > v) s += static_cast<long double>(xi) - v;
  return static_cast<double>(s / x.size());
}

inline double delta(const std::vector<double>& x, double v) {
  long double s = 0;
  for (double xi : x) s += std::fabs(static_cast<long double>(xi) - v);
  return static_cast<double>(s / x.size());
}

// v (2 F_n(v) - 1) + mean - 2 (1/n) sum_{x <= v} x
inline double delta_via_cdf(const std::vector<double>& x, double v) {
  long double below = 0, total = 0;
  std::size_t k = 0;
  for (double xi : x) {
    total += xi;
    if (xi <= v) {
      below += xi;
      ++k;
    }
  }
  const long double n = x.size();
  return static_cast<double>(v * (2.0L * k / n - 1.0L) + total / n - 2.0L * below / n);
}

inline double objective(const std::vector<double>& y, const std::vector<double>& w, const std::vector<double>& a) {
  long double s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) s += w[i] * (static_cast<long double>(y[i]) - a[i]) * (y[i] - a[i]);
  return static_cast<double>(s);
}

// max over s <= i of min over t >= i of the weighted average of y[s..t],
// clipped to [lo, hi].
inline std::vector<double> isotonic_minmax(const std::vector<double>& y, const std::vector<double>& w, double lo,
                                           double hi) {
  const std::size_t n = y.size();
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s <= i; ++s) {
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t t = i; t < n; ++t) {
        long double sw = 0, swy = 0;
        for (std::size_t k = s; k <= t; ++k) {
          sw += w[k];
          swy += w[k] * static_cast<long double>(y[k]);
        }
        worst = std::min(worst, static_cast<double>(swy / sw));
      }
      best = std::max(best, worst);
    }
    a[i] = std::clamp(best, lo, hi);
  }
  return a;
}

// Exhaustive search over every split of 0..n-1 into consecutive blocks. Each
// block takes its clamped weighted mean; the feasible (nondecreasing) candidate
// with the least objective is the constrained optimum, since the optimum is
// constant on blocks that each sit at a bound or at their own mean.
inline double isotonic_exhaustive_objective(const std::vector<double>& y, const std::vector<double>& w, double lo,
                                            double hi) {
  const std::size_t n = y.size();
  double best = std::numeric_limits<double>::infinity();
  const std::uint32_t splits = n == 0 ? 1u : (1u << (n - 1));
  std::vector<double> a(n);
  for (std::uint32_t mask = 0; mask < splits; ++mask) {
    std::size_t start = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool cut = i + 1 == n || (mask >> i) & 1u;
      if (!cut) continue;
      long double sw = 0, swy = 0;
      for (std::size_t k = start; k <= i; ++k) {
        sw += w[k];
        swy += w[k] * static_cast<long double>(y[k]);
      }
      const double m = std::clamp(static_cast<double>(swy / sw), lo, hi);
      for (std::size_t k = start; k <= i; ++k) a[k] = m;
      start = i + 1;
    }
    if (!std::is_sorted(a.begin(), a.end())) continue;
    best = std::min(best, objective(y, w, a));
  }
  return best;
}

// Closed-form distribution-function positions at the 1-based order statistic i
// of a tie-free sorted sample.
inline double spacing_ratio(const std::vector<double>& x, std::size_t i) {
  return (x[i - 1] - x[i - 2]) / (x[i] - x[i - 2]);
}

inline std::vector<double> sorted_uniform_sample(std::mt19937_64& rng, std::size_t n, double lo = -5.0,
                                                 double hi = 5.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  std::sort(x.begin(), x.end());
  return x;
}

}  // namespace oracle

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "madcdf/distributions.hpp"
#include "madcdf/error.hpp"
#include "madcdf/mad_curve.hpp"
#include "oracles.hpp"

using namespace madcdf;
using doctest::Approx;

TEST_CASE("default grid is the order statistics") {
  const Sample s(std::vector<double>{1, -1, 0});
  const MadCurve c = build_mad_curve(s);
  REQUIRE(c.points.size() == 3);
  CHECK(c.points[1].v == 0.0);
  CHECK(c.points[1].delta == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(c.points[0].line_left == 1.0);
  CHECK(c.points[1].line_left == 0.0);
  CHECK(c.points[2].line_right == 1.0);
  CHECK(c.points[0].line_right == -1.0);
  CHECK(c.min_delta == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(c.mean == 0.0);
  CHECK(c.median == 0.0);
}

TEST_CASE("single observation gives |c - v|") {
  const Sample s(std::vector<double>{2.5});
  const std::vector<double> grid = {-3.0, 0.0, 2.5, 4.0, 100.0};
  const MadCurve c = build_mad_curve(s, grid);
  for (const MadPoint& p : c.points) CHECK(p.delta == std::abs(2.5 - p.v));
}

TEST_CASE("normal quantile pseudo-sample has minimum near sqrt(2/pi)") {
  std::vector<double> x;
  for (int i = 1; i <= 100; ++i) x.push_back(normal_quantile((i - 0.5) / 100.0));
  const MadCurve c = build_mad_curve(Sample(x));
  CHECK(std::abs(c.min_delta - std::sqrt(2.0 / std::numbers::pi)) < 0.02);
}

TEST_CASE("invalid grids are rejected") {
  const Sample s(std::vector<double>{1, 2, 3});
  const std::vector<double> unsorted = {1.0, 3.0, 2.0};
  const std::vector<double> repeated = {1.0, 1.0};
  const std::vector<double> nonfinite = {1.0, std::nan("")};
  for (const auto* g : {&unsorted, &repeated, &nonfinite}) {
    try {
      (void)build_mad_curve(s, *g);
      FAIL("expected InvalidGrid");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidGrid);
    }
  }
}

TEST_CASE("curve invariants on random samples") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    const auto x = oracle::sorted_uniform_sample(rng, 2 + rep % 40, -3.0, 7.0);
    const Sample s(x);
    const MadCurve c = build_mad_curve(s, uniform_grid(s, 257));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const MadPoint& p = c.points[i];
      if (i > 0) CHECK(p.v > c.points[i - 1].v);
      CHECK(std::abs(p.delta - (p.delta_plus + p.delta_minus)) <= 1e-12 * std::max(1.0, p.delta));
      CHECK(p.delta >= std::abs(c.mean - p.v) - 1e-12);
      best = std::min(best, p.delta);
    }
    // The grid's best point cannot beat the value at the median.
    CHECK(best >= c.min_delta - 1e-12);
  }
}

TEST_CASE("symmetric sample gives a symmetric curve") {
  const std::vector<double> x = {-4, -1.5, -0.25, 0.25, 1.5, 4};
  const Sample s(x);
  for (double t : {0.0, 0.1, 0.7, 1.5, 3.9, 6.0}) {
    CHECK(std::abs(s.delta(t) - s.delta(-t)) <= 1e-12);
  }
}

TEST_CASE("beyond the range the curve meets the straight lines") {
  std::mt19937_64 rng(77);
  const auto x = oracle::sorted_uniform_sample(rng, 25);
  const Sample s(x);
  const double far_right = s.max() + 10.0 * s.range();
  const double far_left = s.min() - 10.0 * s.range();
  CHECK(std::abs(s.delta(far_right) - (far_right - s.mean())) <= 1e-12 * far_right);
  CHECK(std::abs(s.delta(far_left) - (s.mean() - far_left)) <= 1e-12 * std::abs(far_left));
}

TEST_CASE("uniform grid spans the range") {
  const Sample s(std::vector<double>{2, 8, 5});
  const auto g = uniform_grid(s, 4);
  REQUIRE(g.size() == 4);
  CHECK(g.front() == 2.0);
  CHECK(g.back() == 8.0);
  CHECK(g[1] == Approx(4.0));
  CHECK_THROWS_AS((void)uniform_grid(s, 1), Error);
  CHECK_THROWS_AS((void)uniform_grid(Sample(std::vector<double>{1, 1}), 5), Error);
}

#include <doctest.h>

#include <cmath>
#include <limits>

#include "madcdf/distributions.hpp"
#include "madcdf/error.hpp"
#include "madcdf/numdiff.hpp"

using namespace madcdf;
using doctest::Approx;

TEST_CASE("central differences") {
  CHECK(central_diff([](double x) { return x * x; }, 1.0, 0.5) == 2.0);
  CHECK(central_diff([](double x) { return std::abs(x); }, 1.0, 0.5) == 1.0);
  CHECK(central_diff([](double x) { return x * x * x; }, 0.0, 1.0) == 1.0);
  CHECK_THROWS_AS((void)central_diff([](double x) { return x; }, 0.0, 0.0), Error);
  try {
    (void)central_diff([](double x) { return x > 0 ? std::numeric_limits<double>::infinity() : 0.0; }, 0.0, 1.0);
    FAIL("expected NonFiniteEvaluation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteEvaluation);
  }
}

TEST_CASE("Richardson is exact on quadratics") {
  const auto f = [](double x) { return 3.0 * x * x - 2.0 * x + 7.0; };
  for (int levels : {1, 2, 4, 6}) {
    for (double h0 : {1e-3, 0.1, 2.0, 50.0}) {
      RichardsonConfig cfg;
      cfg.h0 = h0;
      cfg.max_levels = levels;
      CHECK(std::abs(richardson_derivative(f, 3.0, cfg) - 16.0) <= 1e-12 * 16.0);
    }
  }
  RichardsonConfig cfg;
  CHECK(std::abs(richardson_derivative([](double x) { return x * x; }, 3.0, cfg) - 6.0) <= 1e-12);
}

TEST_CASE("Richardson on exp") {
  RichardsonConfig cfg;
  cfg.h0 = 0.5;
  cfg.max_levels = 6;
  CHECK(std::abs(richardson_derivative([](double x) { return std::exp(x); }, 0.0, cfg) - 1.0) < 1e-10);
}

TEST_CASE("population normal MAD differentiates to 2 Phi - 1") {
  const DistSpec g = DistSpec::normal();
  RichardsonConfig cfg;
  cfg.h0 = 0.1;
  const double d = richardson_derivative([&](double v) { return population_mad(g, v); }, 0.3, cfg);
  CHECK(std::abs(d - (2.0 * normal_cdf(0.3) - 1.0)) < 1e-6);
}

TEST_CASE("tableau error ratios follow the even-power pattern") {
  RichardsonConfig cfg;
  cfg.h0 = 0.4;
  cfg.max_levels = 5;
  const auto t = richardson_tableau([](double x) { return std::sin(x); }, 1.0, cfg);
  REQUIRE(t.rows.size() == 5);
  const double truth = std::cos(1.0);
  for (std::size_t k = 1; k <= 3; ++k) {
    const double r0 = (t.rows[k - 1][0] - truth) / (t.rows[k][0] - truth);
    CHECK(r0 >= 3.0);
    CHECK(r0 <= 5.0);
  }
  for (std::size_t k = 2; k <= 4; ++k) {
    const double r1 = (t.rows[k - 1][1] - truth) / (t.rows[k][1] - truth);
    CHECK(r1 >= 12.0);
    CHECK(r1 <= 20.0);
  }
  for (std::size_t k = 0; k < t.steps.size(); ++k) CHECK(t.steps[k] == Approx(0.4 / std::ldexp(1.0, static_cast<int>(k))));
}

TEST_CASE("even functions have zero slope at the origin") {
  RichardsonConfig cfg;
  cfg.h0 = 0.3;
  CHECK(std::abs(richardson_derivative([](double x) { return std::cos(x) + x * x * x * x; }, 0.0, cfg)) <= 1e-12);
  CHECK(std::abs(richardson_derivative([](double x) { return std::abs(x); }, 0.0, cfg)) <= 1e-12);
}

TEST_CASE("early exit at the first converged diagonal") {
  int calls = 0;
  const auto f = [&](double x) {
    ++calls;
    return 5.0 * x;
  };
  RichardsonConfig cfg;
  cfg.max_levels = 6;
  CHECK(richardson_derivative(f, 1.0, cfg) == Approx(5.0));
  // Linear f converges at once, but the tableau itself is always built in full.
  CHECK(calls == 12);
}

TEST_CASE("config validation and step floor") {
  const auto f = [](double x) { return x; };
  RichardsonConfig bad;
  bad.h0 = -1.0;
  CHECK_THROWS_AS((void)richardson_derivative(f, 0.0, bad), Error);
  bad = RichardsonConfig{};
  bad.max_levels = 0;
  CHECK_THROWS_AS((void)richardson_derivative(f, 0.0, bad), Error);
  bad = RichardsonConfig{};
  bad.tol = 0.0;
  CHECK_THROWS_AS((void)richardson_derivative(f, 0.0, bad), Error);

  RichardsonConfig tiny;
  tiny.h0 = 1e-14;
  try {
    (void)richardson_derivative(f, 0.0, tiny);
    FAIL("expected StepUnderflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepUnderflow);
  }

  // Levels whose step would drop below min_h are not evaluated.
  RichardsonConfig floor;
  floor.h0 = 1.0;
  floor.max_levels = 10;
  floor.min_h = 0.1;
  const auto t = richardson_tableau(f, 0.0, floor);
  CHECK(t.rows.size() == 4);
  CHECK(t.steps.back() > 0.1);
}

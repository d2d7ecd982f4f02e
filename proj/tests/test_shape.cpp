#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "madcdf/error.hpp"
#include "madcdf/shape.hpp"

using namespace madcdf;
using doctest::Approx;

TEST_CASE("hand-computed summary of a right-skewed sample") {
  const ShapeSummary r = shape_summary(Sample(std::vector<double>{0, 1, 2, 3, 10}));
  CHECK(r.mean == Approx(3.2).epsilon(1e-15));
  CHECK(r.median == 2.0);
  CHECK(r.sd_pop == Approx(3.5440).epsilon(1e-4));
  CHECK(r.t_r == Approx(1.9187).epsilon(1e-4));
  CHECK(r.t_l == Approx(0.9030).epsilon(1e-4));
  CHECK(r.delta_max_r == Approx(6.8));
  CHECK(r.delta_max_l == Approx(3.2));
  CHECK(r.t_r1 == Approx(r.sd_pop / 6.8));
  CHECK(r.t_l1 == Approx(r.sd_pop / 3.2));
  // delta_plus(2) = (1 + 8) / 5, delta_minus(2) = (2 + 1) / 5
  CHECK(r.w_r == Approx(1.8 / r.sd_pop));
  CHECK(r.w_l == Approx(0.6 / r.sd_pop));
  CHECK(r.sk1 == Approx((r.mean - r.median) / r.sd_pop).epsilon(1e-12));
  CHECK(r.sk2 == Approx(r.t_r - r.t_l));
  CHECK(r.sk21 == Approx(r.t_l1 - r.t_r1));
  CHECK(r.pearson_skew > 0.0);
}

TEST_CASE("two-point symmetric sample has full wideness") {
  const ShapeSummary r = shape_summary(Sample(std::vector<double>{-1, 1}));
  CHECK(r.w == 1.0);
  CHECK(r.l == 0.0);
  CHECK(r.w_r == r.w_l);
  CHECK(r.pearson_kurt == Approx(1.0));
}

TEST_CASE("symmetric sample has zero skewness measures") {
  const ShapeSummary r = shape_summary(Sample(std::vector<double>{-3, -1, 0, 1, 3}));
  CHECK(r.sk1 == 0.0);
  CHECK(r.w_r == r.w_l);
  CHECK(r.t_r == r.t_l);
  CHECK(r.pearson_skew == Approx(0.0));
}

TEST_CASE("errors") {
  try {
    (void)shape_summary(Sample(std::vector<double>{1}));
    FAIL("expected TooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooSmall);
  }
  try {
    (void)shape_summary(Sample(std::vector<double>{2, 2, 2}));
    FAIL("expected DegenerateSample");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSample);
  }
  CHECK_THROWS_AS((void)theoretical_shape(DistSpec::normal(), 99), Error);
}

TEST_CASE("range invariants, affine equivariance and reflection") {
  std::mt19937_64 rng(1234);
  std::lognormal_distribution<double> lg(0.0, 0.8);
  std::uniform_real_distribution<double> ua(0.01, 50.0), ub(-100.0, 100.0);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> x(2 + rep % 50);
    for (auto& v : x) v = lg(rng);
    const ShapeSummary r = shape_summary(Sample(x));
    CHECK(r.w_r >= 0.0);
    CHECK(r.w_l >= 0.0);
    CHECK(r.w <= 1.0 + 1e-12);
    CHECK(r.w == Approx(r.w_r + r.w_l).epsilon(1e-12));
    CHECK(r.l == Approx(1.0 - r.w).epsilon(1e-12));
    CHECK(r.t_r >= 0.0);
    CHECK(r.t_l >= 0.0);
    CHECK(std::abs(r.sk1 - (r.mean - r.median) / r.sd_pop) <= 1e-12);
    CHECK(r.mad_about_median <= r.sd_pop * (1 + 1e-12));

    const double a = ua(rng);
    const double b = ub(rng);
    std::vector<double> y(x.size()), z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      y[i] = a * x[i] + b;
      z[i] = -x[i];
    }
    const ShapeSummary ra = shape_summary(Sample(y));
    CHECK(std::abs(ra.w_r - r.w_r) <= 1e-10);
    CHECK(std::abs(ra.w_l - r.w_l) <= 1e-10);
    CHECK(std::abs(ra.w - r.w) <= 1e-10);
    CHECK(std::abs(ra.l - r.l) <= 1e-10);
    CHECK(std::abs(ra.t_r - r.t_r) <= 1e-10);
    CHECK(std::abs(ra.t_l - r.t_l) <= 1e-10);
    CHECK(std::abs(ra.sk1 - r.sk1) <= 1e-10);
    CHECK(std::abs(ra.sk2 - r.sk2) <= 1e-10);

    const ShapeSummary rr = shape_summary(Sample(z));
    CHECK(std::abs(rr.w_r - r.w_l) <= 1e-10);
    CHECK(std::abs(rr.w_l - r.w_r) <= 1e-10);
    CHECK(std::abs(rr.t_r - r.t_l) <= 1e-10);
    CHECK(std::abs(rr.t_l - r.t_r) <= 1e-10);
    CHECK(std::abs(rr.sk1 + r.sk1) <= 1e-10);
    CHECK(std::abs(rr.sk2 + r.sk2) <= 1e-10);
    CHECK(std::abs(rr.sk21 + r.sk21) <= 1e-10 * std::max(1.0, std::abs(r.sk21)));
  }
}

TEST_CASE("theoretical wideness matches analytic values") {
  constexpr std::size_t kGrid = 100000;
  CHECK(std::abs(theoretical_shape(DistSpec::normal(), kGrid).w - std::sqrt(2.0 / std::numbers::pi)) < 1e-3);
  CHECK(std::abs(theoretical_shape(DistSpec::laplace(), kGrid).w - 1.0 / std::sqrt(2.0)) < 1e-3);
  CHECK(std::abs(theoretical_shape(DistSpec::uniform(), kGrid).w - std::sqrt(3.0) / 2.0) < 1e-3);
  CHECK(std::abs(theoretical_shape(DistSpec::beta(1.0, 1.0), kGrid).w - std::sqrt(3.0) / 2.0) < 1e-3);
  // Symmetric distributions have no skewness on a symmetric grid.
  const ShapeSummary t = theoretical_shape(DistSpec::logistic(), 1000);
  CHECK(std::abs(t.sk1) < 1e-9);
  CHECK(std::abs(t.w_r - t.w_l) < 1e-9);
}

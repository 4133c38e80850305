#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ginin/bounds.hpp"
#include "ginin/gini.hpp"
#include "ginin/special_functions.hpp"
#include "support/test_support.hpp"

using namespace ginin;
using ginin::testing::random_step_quantile;

TEST_CASE("sd ratio bound reference values") {
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  CHECK(sd_ratio_upper_bound(GiniOrder(2)) == doctest::Approx(inv_sqrt3).epsilon(1e-15));
  CHECK(sd_ratio_upper_bound(GiniOrder(3)) == doctest::Approx(inv_sqrt3).epsilon(1e-15));
  CHECK(sd_ratio_upper_bound(GiniOrder(4)) ==
        doctest::Approx(std::sqrt(19.0 / 70.0)).epsilon(1e-15));
  CHECK(std::fabs(sd_ratio_upper_bound(GiniOrder(4)) - 0.520988) < 1e-6);
}

TEST_CASE("sd ratio bound decreases from order 3 and tracks 1/sqrt(n)") {
  double prev = sd_ratio_upper_bound(GiniOrder(3));
  for (int n = 4; n <= 60; ++n) {
    const double bound = sd_ratio_upper_bound(GiniOrder(n));
    CHECK(bound < prev);
    prev = bound;
  }
  CHECK(sd_ratio_upper_bound(GiniOrder(60)) ==
        doctest::Approx(1.0 / std::sqrt(60.0)).epsilon(0.02));
}

TEST_CASE("rational and log-gamma paths agree at the crossover") {
  // n = 20 uses exact rationals, n = 21 the log-gamma route; both must sit on
  // the same smooth curve.
  const auto by_lgamma = [](int n) {
    const double ratio = std::exp(std::log(2.0) + 2.0 * log_gamma(n) - log_gamma(2.0 * n));
    return std::sqrt(2.0 / (2.0 * n - 1.0) - ratio);
  };
  for (int n : {2, 5, 12, 20}) {
    CHECK(sd_ratio_upper_bound(GiniOrder(n)) == doctest::Approx(by_lgamma(n)).epsilon(1e-13));
  }
}

TEST_CASE("gd ratio bounds") {
  const RatioBound b34 = gd_ratio_bounds(GiniOrder(3), GiniOrder(4));
  CHECK(b34.lower == doctest::Approx(7.0 / 8.0).epsilon(1e-15));
  CHECK(b34.upper == 1.0);
  const RatioBound b23 = gd_ratio_bounds(GiniOrder(2), GiniOrder(3));
  CHECK(b23.lower == doctest::Approx(1.0).epsilon(1e-15));
  const RatioBound b22 = gd_ratio_bounds(GiniOrder(2), GiniOrder(2));
  CHECK(b22.lower == doctest::Approx(1.0));
  CHECK(b22.upper == 1.0);
  CHECK_THROWS_AS((void)gd_ratio_bounds(GiniOrder(4), GiniOrder(3)), std::domain_error);
  CHECK(b34.upper_witness.find("not attained") != std::string::npos);
}

TEST_CASE("choquet ratio scan reproduces the deviation ratio bounds") {
  const auto h4 = DistortionFunction::canonical(GiniOrder(4));
  const auto h3 = DistortionFunction::canonical(GiniOrder(3));
  const RatioBound scanned = choquet_ratio_bounds(h4, h3, 20000);
  CHECK(scanned.lower == doctest::Approx(7.0 / 8.0).epsilon(1e-8));
  CHECK(scanned.upper == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("choquet ratio degenerate cases") {
  const DistortionFunction h({1.0, -1.0});  // t(1-t)
  const RatioBound same = choquet_ratio_bounds(h, h, 1000);
  CHECK(same.lower == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(same.upper == doctest::Approx(1.0).epsilon(1e-10));
  const DistortionFunction twice({2.0, -2.0});
  const RatioBound doubled = choquet_ratio_bounds(twice, h, 1000);
  CHECK(doubled.lower == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(doubled.upper == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("choquet ratio validates the distortion class") {
  const DistortionFunction ok({1.0, -1.0});
  const DistortionFunction negative_inside({-1.0, 1.0});  // t^2 - t < 0 inside
  CHECK_THROWS_AS((void)choquet_ratio_bounds(negative_inside, ok, 1000), std::domain_error);
  const DistortionFunction nonzero_at_one({1.0});  // h(1) = 1
  CHECK_THROWS_AS((void)choquet_ratio_bounds(nonzero_at_one, ok, 1000), std::domain_error);
}

TEST_CASE("sd bound witness approaches the sharp ratio") {
  for (int n : {2, 10}) {
    const StepQuantile witness = sd_bound_witness(GiniOrder(n), 10000);
    CHECK(std::fabs(witness.mean()) < 1e-10);
    const double ratio =
        gd_n(witness, GiniOrder(n)) / std::sqrt(witness.variance());
    CHECK(std::fabs(ratio - sd_ratio_upper_bound(GiniOrder(n))) < 1e-3);
  }
}

TEST_CASE("random step corpus never violates the sd bound") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 1000; ++trial) {
    const StepQuantile q = random_step_quantile(rng, 8);
    if (q.cell_count() < 2) continue;
    const double sd = std::sqrt(q.variance());
    for (int n : {2, 5, 12}) {
      CHECK(gd_n(q, GiniOrder(n)) / sd <= sd_ratio_upper_bound(GiniOrder(n)) + 1e-12);
    }
  }
}

TEST_CASE("random step corpus stays inside the ratio bounds") {
  SplitMix64 rng(424242);
  for (int trial = 0; trial < 1000; ++trial) {
    const StepQuantile q = random_step_quantile(rng, 8);
    if (q.cell_count() < 2) continue;
    double gd[9];
    for (int n = 2; n <= 8; ++n) gd[n] = gd_n(q, GiniOrder(n));
    for (int m = 2; m <= 8; ++m) {
      for (int n = m; n <= 8; ++n) {
        const double ratio = gd[n] / gd[m];
        const double lower = gd_ratio_bounds(GiniOrder(m), GiniOrder(n)).lower;
        CHECK(ratio >= lower - 1e-12);
        CHECK(ratio <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("two-point witnesses pin both ends of the ratio bound") {
  for (int m : {2, 3, 5}) {
    for (int n : {5, 7, 8}) {
      if (m > n) continue;
      const QuantileFunction symmetric(ParametricDistribution::two_point(0.0, 1.0, 0.5));
      const double attained =
          gd_n(symmetric, GiniOrder(n)) / gd_n(symmetric, GiniOrder(m));
      CHECK(attained ==
            doctest::Approx(gd_ratio_bounds(GiniOrder(m), GiniOrder(n)).lower).epsilon(1e-12));
      const QuantileFunction extreme(ParametricDistribution::two_point(0.0, 1.0, 1e-6));
      const double near_one = gd_n(extreme, GiniOrder(n)) / gd_n(extreme, GiniOrder(m));
      CHECK(near_one >= 1.0 - 1e-4);
    }
  }
}

TEST_CASE("deviation sequences decrease in the order") {
  SUBCASE("exponential matches the harmonic closed form over n = 2..50") {
    const auto values = monotonicity_check(ParametricDistribution::exponential(1.0), 50);
    double harmonic = 0.0;
    for (int n = 2; n <= 50; ++n) {
      harmonic += 1.0 / (n - 1);
      CHECK(values[static_cast<std::size_t>(n - 2)] ==
            doctest::Approx(harmonic / n).epsilon(1e-12));
    }
    CHECK(values.back() < values.front());
  }
  SUBCASE("order 2 equals order 3 for every catalog family") {
    const ParametricDistribution dists[] = {
        ParametricDistribution::bernoulli(0.25),
        ParametricDistribution::two_point(1.0, 6.0, 0.4),
        ParametricDistribution::beta(2.0, 3.0),
        ParametricDistribution::log_normal(0.0, 1.0),
        ParametricDistribution::exponential(0.7),
        ParametricDistribution::pareto(2.5, 1.0),
    };
    for (const auto& dist : dists) {
      const auto values = monotonicity_check(dist, 4);
      CHECK(values[0] == doctest::Approx(values[1]).epsilon(1e-8));
    }
  }
}

TEST_CASE("log-normal and pareto coefficients cross in the order") {
  // Appendix-style comparison: the log-normal starts more unequal at n = 2 but
  // the heavier Pareto tail takes over by n <= 20.
  const QuantileFunction ln(ParametricDistribution::log_normal(0.0, 0.5));
  const auto pareto = ParametricDistribution::pareto(2.5, 1.0);
  CHECK(gc_n(ln, GiniOrder(2)) > *pareto.closed_form_gc(GiniOrder(2)));
  int crossing = 0;
  for (int n = 3; n <= 20; ++n) {
    if (gc_n(ln, GiniOrder(n)) < *pareto.closed_form_gc(GiniOrder(n))) {
      crossing = n;
      break;
    }
  }
  CHECK(crossing == 8);  // first order where the Pareto overtakes
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ginin/estimation.hpp"
#include "ginin/gini.hpp"
#include "ginin/quantile.hpp"
#include "ginin/rng.hpp"
#include "support/test_support.hpp"

using namespace ginin;
using ginin::testing::random_step_quantile;

TEST_CASE("sample construction sorts and validates") {
  const Sample s({3.0, 1.0, 2.0});
  CHECK(s.values() == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(s.mean() == doctest::Approx(2.0));
  CHECK_THROWS_AS(Sample({1.0}), std::domain_error);
  CHECK_THROWS_AS(Sample({1.0, std::nan("")}), std::domain_error);
}

TEST_CASE("estimator reference values on {1,2,3}") {
  const Sample s({1.0, 2.0, 3.0});
  CHECK(estimate_gd(s, GiniOrder(2), WeightScheme::PaperWeights) ==
        doctest::Approx(10.0 / 9.0).epsilon(1e-14));
  CHECK(estimate_gd(s, GiniOrder(2), WeightScheme::ExactChoquet) ==
        doctest::Approx(4.0 / 9.0).epsilon(1e-14));
  CHECK(estimate_gc(s, GiniOrder(2), WeightScheme::ExactChoquet) ==
        doctest::Approx(2.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("constant samples") {
  const Sample s({5.0, 5.0, 5.0, 5.0, 5.0});
  for (int n : {2, 3, 9}) {
    CHECK(estimate_gd(s, GiniOrder(n), WeightScheme::ExactChoquet) == 0.0);
    const double paper = estimate_gd(s, GiniOrder(n), WeightScheme::PaperWeights);
    CHECK(std::fabs(paper) <= 2.0 * 5.0 * n / 5.0);
  }
}

TEST_CASE("coefficient estimator validates nonnegativity and scale invariance") {
  CHECK_THROWS_AS((void)estimate_gc(Sample({-1.0, 2.0}), GiniOrder(2)), std::domain_error);
  CHECK_THROWS_AS((void)estimate_gc(Sample({0.0, 0.0}), GiniOrder(2)), std::domain_error);
  const Sample s({1.0, 2.0, 3.0});
  const Sample scaled({7.0, 14.0, 21.0});
  for (auto scheme : {WeightScheme::PaperWeights, WeightScheme::ExactChoquet}) {
    CHECK(estimate_gc(scaled, GiniOrder(2), scheme) ==
          doctest::Approx(estimate_gc(s, GiniOrder(2), scheme)).epsilon(1e-14));
  }
}

TEST_CASE("exact scheme equals the deviation of the empirical step quantile") {
  SplitMix64 rng(2121);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> values;
    const std::size_t count = 2 + rng.next_u64() % 200;
    for (std::size_t i = 0; i < count; ++i) values.push_back(10.0 * rng.next_uniform() - 3.0);
    const Sample s(values);
    const int n = 2 + static_cast<int>(rng.next_u64() % 10);
    const double via_estimator = estimate_gd(s, GiniOrder(n), WeightScheme::ExactChoquet);
    const double via_quantile = gd_n(StepQuantile::empirical(s.values()), GiniOrder(n));
    CHECK(std::fabs(via_estimator - via_quantile) <=
          1e-12 * std::max(1.0, std::fabs(via_quantile)));
  }
}

TEST_CASE("the two schemes differ by at most the Riemann gap") {
  SplitMix64 rng(808);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> values;
    const std::size_t count = 10 + rng.next_u64() % 500;
    double max_abs = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      values.push_back(6.0 * rng.next_uniform() - 2.0);
      max_abs = std::max(max_abs, std::fabs(values.back()));
    }
    const Sample s(values);
    const int n = 2 + static_cast<int>(rng.next_u64() % 7);
    const double gap = std::fabs(estimate_gd(s, GiniOrder(n), WeightScheme::PaperWeights) -
                                 estimate_gd(s, GiniOrder(n), WeightScheme::ExactChoquet));
    CHECK(gap <= 8.0 * max_abs * n * n / static_cast<double>(count));
  }
}

TEST_CASE("estimator is consistent for the exponential coefficient") {
  const auto dist = ParametricDistribution::exponential(1.0);
  const Sample s(dist.sample(5000, 991));
  CHECK(std::fabs(estimate_gc(s, GiniOrder(4), WeightScheme::PaperWeights) - 11.0 / 24.0) < 0.02);
}

TEST_CASE("estimation error shrinks with the sample size") {
  const auto dist = ParametricDistribution::exponential(1.0);
  for (int n : {2, 5, 10}) {
    const double truth = *dist.closed_form_gd(GiniOrder(n));
    std::vector<double> median_errors;
    for (std::size_t size : {100u, 1000u, 10000u, 100000u}) {
      std::vector<double> errors;
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Sample s(dist.sample(size, 1000 + seed));
        errors.push_back(std::fabs(estimate_gd(s, GiniOrder(n)) - truth));
      }
      std::sort(errors.begin(), errors.end());
      median_errors.push_back(errors[25]);
    }
    for (std::size_t i = 1; i < median_errors.size(); ++i) {
      CHECK(median_errors[i] < median_errors[i - 1]);
    }
  }
}

TEST_CASE("asymptotic variance reproduces the reported values") {
  SUBCASE("log-normal order 5") {
    const auto ln = ParametricDistribution::log_normal(0.0, 1.0);
    const double gd_var = asymptotic_variance_gd(ln, GiniOrder(5));
    CHECK(gd_var >= 2.28);
    CHECK(gd_var <= 2.38);
    const double gc_var = asymptotic_variance_gc(ln, GiniOrder(5));
    CHECK(gc_var >= 0.18);
    CHECK(gc_var <= 0.20);
    CHECK(gc_var < gd_var);
  }
  SUBCASE("pareto order 5") {
    const auto pareto = ParametricDistribution::pareto(3.0, 2.0);
    CHECK(std::fabs(asymptotic_variance_gd(pareto, GiniOrder(5)) - 1.83) < 0.05);
    CHECK(std::fabs(asymptotic_variance_gc(pareto, GiniOrder(5)) - 0.13) < 0.01);
  }
  SUBCASE("always nonnegative") {
    CHECK(asymptotic_variance_gd(ParametricDistribution::beta(2.0, 3.0), GiniOrder(3)) >= 0.0);
  }
}

TEST_CASE("asymptotic variance rejects inadmissible inputs") {
  CHECK_THROWS_AS(
      (void)asymptotic_variance_gd(ParametricDistribution::bernoulli(0.5), GiniOrder(2)),
      std::domain_error);
  CHECK_THROWS_AS(
      (void)asymptotic_variance_gd(ParametricDistribution::two_point(0.0, 1.0, 0.5), GiniOrder(2)),
      std::domain_error);
  CHECK_THROWS_AS(
      (void)asymptotic_variance_gd(ParametricDistribution::pareto(2.0, 1.0), GiniOrder(2)),
      std::domain_error);
}

TEST_CASE("variance integrand symmetry: both integration orders agree") {
  // Small tensor-product double sum, evaluated as written and transposed.
  const auto ln = ParametricDistribution::log_normal(0.0, 1.0);
  const int n = 5;
  const std::size_t points = 1500;
  const double delta = 1e-5;
  std::vector<double> t(points), x(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(points - 1);
    t[i] = delta + (1.0 - 2.0 * delta) * (s * s * s * (10.0 + s * (-15.0 + 6.0 * s)));
    x[i] = ln.quantile(t[i]);
  }
  const auto weight = [&](std::size_t i) {
    const double lo = i == 0 ? 0.0 : 0.5 * (x[i] - x[i - 1]);
    const double hi = i + 1 == points ? 0.0 : 0.5 * (x[i + 1] - x[i]);
    return lo + hi;
  };
  double forward = 0.0, transposed = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double gi = phi_weight(GiniOrder(n), t[i]) * weight(i);
    for (std::size_t j = 0; j < points; ++j) {
      const double gj = phi_weight(GiniOrder(n), t[j]) * weight(j);
      const double kernel = std::min(t[i], t[j]) - t[i] * t[j];
      forward += gi * gj * kernel;
      transposed += gj * gi * kernel;
    }
  }
  CHECK(forward == doctest::Approx(transposed).epsilon(1e-8));
  // and the production reduction sees the same integral on this mesh scale
  CHECK(asymptotic_variance_gd(ln, GiniOrder(n)) == doctest::Approx(forward).epsilon(0.02));
}

TEST_CASE("variance profiles in the order for the log-normal") {
  const auto ln = ParametricDistribution::log_normal(0.0, 1.0);
  std::vector<double> gd_var, gc_var;
  for (int n = 2; n <= 20; ++n) {
    gd_var.push_back(asymptotic_variance_gd(ln, GiniOrder(n)));
    gc_var.push_back(asymptotic_variance_gc(ln, GiniOrder(n)));
  }
  for (std::size_t i = 1; i < gd_var.size(); ++i) {
    CHECK(gd_var[i] <= gd_var[i - 1] * (1.0 + 1e-9));
  }
  // the coefficient variance rises first and falls later: interior maximum
  const auto max_it = std::max_element(gc_var.begin(), gc_var.end());
  CHECK(max_it != gc_var.begin());
  CHECK(max_it != gc_var.end() - 1);
  CHECK(*max_it > gc_var.front());
  CHECK(*max_it > gc_var.back());
}

TEST_CASE("bootstrap intervals") {
  SUBCASE("degenerate on constant samples with the exact scheme") {
    const Sample s({4.0, 4.0, 4.0, 4.0});
    const auto report = bootstrap_ci(s, GiniOrder(2), EstimandTarget::GD, 0.95, 200, 7,
                                     WeightScheme::ExactChoquet);
    CHECK(report.ci_lo == 0.0);
    CHECK(report.ci_hi == 0.0);
    CHECK(report.point == 0.0);
    CHECK(report.method == "bootstrap");
  }
  SUBCASE("a single replication collapses the interval") {
    const Sample s({1.0, 2.0, 5.0});
    const auto report = bootstrap_ci(s, GiniOrder(2), EstimandTarget::GD, 0.9, 1, 11);
    CHECK(report.ci_lo <= report.point);
    CHECK(report.ci_hi >= report.point);
    CHECK(report.std_error == 0.0);
  }
  SUBCASE("deterministic in the seed") {
    const Sample s(ParametricDistribution::exponential(1.0).sample(200, 5));
    const auto a = bootstrap_ci(s, GiniOrder(2), EstimandTarget::GC, 0.95, 150, 13);
    const auto b = bootstrap_ci(s, GiniOrder(2), EstimandTarget::GC, 0.95, 150, 13);
    CHECK(a.ci_lo == b.ci_lo);
    CHECK(a.ci_hi == b.ci_hi);
  }
  SUBCASE("level validation") {
    const Sample s({1.0, 2.0});
    CHECK_THROWS_AS((void)bootstrap_ci(s, GiniOrder(2), EstimandTarget::GD, 0.0, 10, 1),
                    std::domain_error);
    CHECK_THROWS_AS((void)bootstrap_ci(s, GiniOrder(2), EstimandTarget::GD, 1.0, 10, 1),
                    std::domain_error);
  }
}

TEST_CASE("bootstrap coverage of the exponential deviation") {
  const auto dist = ParametricDistribution::exponential(1.0);
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Sample s(dist.sample(5000, 40000 + seed));
    const auto report =
        bootstrap_ci(s, GiniOrder(2), EstimandTarget::GD, 0.95, 200, 90000 + seed);
    if (report.ci_lo <= 0.5 && 0.5 <= report.ci_hi) ++covered;
  }
  CHECK(covered >= 90);
}

TEST_CASE("plugin asymptotic report approximates the CLT interval") {
  const auto dist = ParametricDistribution::log_normal(0.0, 1.0);
  const Sample s(dist.sample(20000, 17));
  const auto report = plugin_asymptotic_report(s, GiniOrder(5), EstimandTarget::GD, 0.95);
  CHECK(report.method == "plugin-asymptotic");
  // sigma^2 = 2.33 at N = 20000 gives a standard error near 0.0108
  CHECK(report.std_error == doctest::Approx(std::sqrt(2.33 / 20000.0)).epsilon(0.15));
  CHECK(report.ci_lo < report.point);
  CHECK(report.ci_hi > report.point);
}

TEST_CASE("simulation harness smoke run") {
  const auto dist = ParametricDistribution::exponential(1.0);
  const auto summary = simulate_sampling_distribution(dist, GiniOrder(2), 500, 300, 21,
                                                      EstimandTarget::GD, 1);
  CHECK(summary.replications == 300);
  CHECK(summary.predicted_mean == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::fabs(summary.estimate_mean - 0.5) < 0.01);
  CHECK(summary.estimate_variance > 0.0);
  CHECK(summary.ks_distance > 0.0);
  CHECK(summary.ks_distance < 0.2);
}

TEST_CASE("simulation output is identical across thread counts") {
  const auto dist = ParametricDistribution::log_normal(0.0, 1.0);
  const auto one = simulate_sampling_distribution(dist, GiniOrder(3), 400, 64, 5,
                                                  EstimandTarget::GC, 1);
  const auto four = simulate_sampling_distribution(dist, GiniOrder(3), 400, 64, 5,
                                                   EstimandTarget::GC, 4);
  CHECK(one.estimate_mean == four.estimate_mean);
  CHECK(one.estimate_variance == four.estimate_variance);
  CHECK(one.ks_distance == four.ks_distance);
}

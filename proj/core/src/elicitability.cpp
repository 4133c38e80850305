#include "ginin/elicitability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ginin/errors.hpp"
#include "ginin/gini.hpp"
#include "ginin/quantile.hpp"
#include "ginin/summation.hpp"

namespace ginin {

ScoreVariant::ScoreVariant(Kind kind, int order, std::vector<double> coefficients)
    : kind_(kind), order_(order), coefficients_(std::move(coefficients)) {}

ScoreVariant ScoreVariant::gd_squared(GiniOrder n) { return {Kind::GdSquared, n.value(), {}}; }
ScoreVariant ScoreVariant::gd_linear(GiniOrder n) { return {Kind::GdLinear, n.value(), {}}; }
ScoreVariant ScoreVariant::gc_linear(GiniOrder n) { return {Kind::GcLinear, n.value(), {}}; }

ScoreVariant ScoreVariant::poly_distortion(std::vector<double> coefficients) {
  if (coefficients.empty()) {
    throw std::domain_error("ScoreVariant: polynomial score needs coefficients");
  }
  for (double a : coefficients) {
    if (!std::isfinite(a)) throw std::domain_error("ScoreVariant: coefficients must be finite");
  }
  const int order = static_cast<int>(coefficients.size());
  return {Kind::PolyDistortion, order, std::move(coefficients)};
}

std::string ScoreVariant::name() const {
  switch (kind_) {
    case Kind::GdSquared:
      return "gd-squared";
    case Kind::GdLinear:
      return "gd-linear";
    case Kind::GcLinear:
      return "gc-linear";
    case Kind::PolyDistortion:
      return "poly-distortion";
  }
  return "unknown";
}

TupleSet::TupleSet(std::vector<double> flat, int order) : flat_(std::move(flat)), order_(order) {
  if (order_ < 1) throw std::domain_error("TupleSet: order must be at least 1");
  if (flat_.empty() || flat_.size() % static_cast<std::size_t>(order_) != 0) {
    throw std::domain_error("TupleSet: data size must be a positive multiple of the order");
  }
}

TupleSet TupleSet::from_stream(const std::vector<double>& draws, int order) {
  if (order < 1) throw std::domain_error("TupleSet: order must be at least 1");
  const std::size_t usable =
      (draws.size() / static_cast<std::size_t>(order)) * static_cast<std::size_t>(order);
  if (usable == 0) throw std::domain_error("TupleSet: not enough draws for a single tuple");
  return TupleSet(std::vector<double>(draws.begin(), draws.begin() + usable), order);
}

namespace {

double tuple_range(std::span<const double> y) {
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  return *hi - *lo;
}

// sum_i a_i max{y_1..y_i}, the statistic of the constructive polynomial score.
double prefix_max_combination(const std::vector<double>& coeffs, std::span<const double> y) {
  double running_max = y[0];
  double acc = coeffs[0] * running_max;
  for (std::size_t i = 1; i < y.size(); ++i) {
    running_max = std::max(running_max, y[i]);
    acc += coeffs[i] * running_max;
  }
  return acc;
}

void check_arity(const ScoreVariant& variant, std::span<const double> y) {
  if (static_cast<int>(y.size()) != variant.order()) {
    throw std::domain_error("score: tuple length does not match the variant order");
  }
}

}  // namespace

double score(const ScoreVariant& variant, double x, std::span<const double> y) {
  check_arity(variant, y);
  const double n = variant.order();
  switch (variant.kind()) {
    case ScoreVariant::Kind::GdSquared: {
      const double v = n * x - tuple_range(y);
      return v * v;
    }
    case ScoreVariant::Kind::GdLinear:
      return n * x * x - 2.0 * x * tuple_range(y);
    case ScoreVariant::Kind::GcLinear:
      return x * x * y[0] - (2.0 * x / n) * tuple_range(y);
    case ScoreVariant::Kind::PolyDistortion: {
      const double v = x + prefix_max_combination(variant.coefficients(), y);
      return v * v;
    }
  }
  throw std::logic_error("score: unknown variant");
}

namespace {

double empirical_mean_score(const ScoreVariant& variant, const TupleSet& tuples, double x) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < tuples.count(); ++i) {
    acc.add(score(variant, x, tuples.tuple(i)));
  }
  return acc.value() / static_cast<double>(tuples.count());
}

// Derivative-free verification: golden-section bracket shrink followed by a
// three-point parabolic vertex, exact for the quadratic mean-score families.
double search_minimizer(const ScoreVariant& variant, const TupleSet& tuples, double lo,
                        double hi) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = empirical_mean_score(variant, tuples, x1);
  double f2 = empirical_mean_score(variant, tuples, x2);
  for (int it = 0; it < 160 && (hi - lo) > 1e-10 * (1.0 + std::fabs(lo) + std::fabs(hi)); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = empirical_mean_score(variant, tuples, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = empirical_mean_score(variant, tuples, x2);
    }
  }
  const double g = 0.5 * (lo + hi);
  const double h = 1e-3 * (1.0 + std::fabs(g));
  const double fm = empirical_mean_score(variant, tuples, g - h);
  const double f0 = empirical_mean_score(variant, tuples, g);
  const double fp = empirical_mean_score(variant, tuples, g + h);
  const double denom = fm - 2.0 * f0 + fp;
  if (denom > 0.0) {
    return g + 0.5 * h * (fm - fp) / denom;
  }
  return g;
}

}  // namespace

double erm_minimize(const ScoreVariant& variant, const TupleSet& tuples) {
  if (tuples.order() != variant.order()) {
    throw std::domain_error("erm_minimize: tuple order does not match the variant");
  }
  const double n = variant.order();
  const std::size_t count = tuples.count();

  CompensatedSum range_acc, first_acc, poly_acc;
  double max_range = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto y = tuples.tuple(i);
    if (variant.kind() == ScoreVariant::Kind::PolyDistortion) {
      poly_acc.add(prefix_max_combination(variant.coefficients(), y));
    } else {
      const double r = tuple_range(y);
      range_acc.add(r);
      max_range = std::max(max_range, r);
      first_acc.add(y[0]);
    }
  }

  double exact;
  switch (variant.kind()) {
    case ScoreVariant::Kind::GdSquared:
    case ScoreVariant::Kind::GdLinear:
      exact = range_acc.value() / static_cast<double>(count) / n;
      break;
    case ScoreVariant::Kind::GcLinear: {
      const double mean_first = first_acc.value() / static_cast<double>(count);
      if (!(mean_first > 0.0)) {
        throw std::domain_error("erm_minimize: mean of the first coordinate must be positive");
      }
      exact = range_acc.value() / static_cast<double>(count) / n / mean_first;
      break;
    }
    case ScoreVariant::Kind::PolyDistortion:
      exact = -poly_acc.value() / static_cast<double>(count);
      break;
    default:
      throw std::logic_error("erm_minimize: unknown variant");
  }

  const double margin = 1.0 + max_range + std::fabs(exact);
  const double searched = search_minimizer(variant, tuples, exact - margin, exact + margin);
  if (std::fabs(searched - exact) > 1e-9 * std::max(1.0, std::fabs(exact)) + 1e-9) {
    throw convergence_error("erm_minimize: search verification disagrees with the minimizer");
  }
  return exact;
}

double check_n_minus_1_elicitability(GiniOrder order, const TupleSet& tuples,
                                     const ParametricDistribution& dist) {
  const int n = order.value();
  if (n % 2 == 0) {
    throw std::domain_error("check_n_minus_1_elicitability: order must be odd");
  }
  if (tuples.order() != n - 1) {
    throw std::domain_error("check_n_minus_1_elicitability: tuples must have length n-1");
  }
  std::vector<double> coeffs = hn_one_minus_t_coefficients(order);
  if (std::fabs(coeffs.back()) > 1e-12) {
    throw convergence_error(
        "check_n_minus_1_elicitability: degree-n coefficient did not cancel");
  }
  coeffs.pop_back();
  const ScoreVariant variant = ScoreVariant::poly_distortion(std::move(coeffs));
  const double minimizer = erm_minimize(variant, tuples);

  // Monte Carlo error of the minimizer: standard error of the per-tuple
  // statistic whose mean it is.
  const std::size_t count = tuples.count();
  CompensatedSum sum, sum_sq;
  for (std::size_t i = 0; i < count; ++i) {
    const double v = -prefix_max_combination(variant.coefficients(), tuples.tuple(i));
    sum.add(v);
    sum_sq.add(v * v);
  }
  const double mean = sum.value() / static_cast<double>(count);
  const double var = std::max(0.0, sum_sq.value() / static_cast<double>(count) - mean * mean);
  const double se = std::sqrt(var / static_cast<double>(count));

  const double reference = gd_n(QuantileFunction(dist), order);
  if (std::fabs(minimizer - reference) > 6.0 * se + 1e-9) {
    throw convergence_error(
        "check_n_minus_1_elicitability: minimizer inconsistent with the distribution value");
  }
  return minimizer;
}

BacktestReport comparative_backtest(const ScoreVariant& variant, double forecast_a,
                                    double forecast_b, const TupleSet& tuples) {
  if (tuples.count() < 2) {
    throw std::domain_error("comparative_backtest: needs at least two tuples");
  }
  if (tuples.order() != variant.order()) {
    throw std::domain_error("comparative_backtest: tuple order does not match the variant");
  }
  BacktestReport report;
  report.tuple_count = tuples.count();
  CompensatedSum a_acc, b_acc, diff_acc, diff_sq_acc;
  for (std::size_t i = 0; i < tuples.count(); ++i) {
    const auto y = tuples.tuple(i);
    const double sa = score(variant, forecast_a, y);
    const double sb = score(variant, forecast_b, y);
    a_acc.add(sa);
    b_acc.add(sb);
    diff_acc.add(sa - sb);
    diff_sq_acc.add((sa - sb) * (sa - sb));
  }
  const auto count = static_cast<double>(tuples.count());
  report.mean_score_a = a_acc.value() / count;
  report.mean_score_b = b_acc.value() / count;
  report.mean_diff = diff_acc.value() / count;
  const double var =
      std::max(0.0, (diff_sq_acc.value() - count * report.mean_diff * report.mean_diff) /
                        (count - 1.0));
  if (var > 0.0) {
    report.t_statistic = report.mean_diff / std::sqrt(var / count);
  } else {
    report.degenerate_variance = true;
    report.t_statistic = 0.0;
  }
  return report;
}

}  // namespace ginin

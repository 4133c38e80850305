#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ginin/distortion.hpp"
#include "ginin/distributions.hpp"

namespace ginin {

// The score functions under which the deviations are multi-observation
// elicitable. GdSquared needs square-integrable data, GdLinear and GcLinear
// only integrable data; PolyDistortion is the constructive score for any
// signed Choquet integral with a polynomial distortion, parameterized by the
// distortion's coefficients in powers of (1-t).
class ScoreVariant {
 public:
  enum class Kind { GdSquared, GdLinear, GcLinear, PolyDistortion };

  static ScoreVariant gd_squared(GiniOrder n);
  static ScoreVariant gd_linear(GiniOrder n);
  static ScoreVariant gc_linear(GiniOrder n);
  static ScoreVariant poly_distortion(std::vector<double> coefficients);

  Kind kind() const { return kind_; }
  int order() const { return order_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  std::string name() const;

 private:
  ScoreVariant(Kind kind, int order, std::vector<double> coefficients);
  Kind kind_;
  int order_;
  std::vector<double> coefficients_;
};

// Groups of iid realizations, stored row-major. Tuples are formed by chunking
// a draw stream into consecutive disjoint groups, which preserves the iid
// premise without reuse bias.
class TupleSet {
 public:
  TupleSet(std::vector<double> flat, int order);
  static TupleSet from_stream(const std::vector<double>& draws, int order);

  int order() const { return order_; }
  std::size_t count() const { return flat_.size() / static_cast<std::size_t>(order_); }
  std::span<const double> tuple(std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(order_),
            static_cast<std::size_t>(order_)};
  }

 private:
  std::vector<double> flat_;
  int order_;
};

// One score evaluation S(x, y_1..y_n). Throws on arity mismatch.
double score(const ScoreVariant& variant, double x, std::span<const double> observations);

// Exact minimizer of the empirical mean score over the tuple set, verified
// against a derivative-free search (golden section plus parabolic polish)
// to 1e-9.
double erm_minimize(const ScoreVariant& variant, const TupleSet& tuples);

// For odd n, the distortion h_n has no degree-n term in its (1-t) expansion,
// so the constructive score needs only n-1 observations. Builds that score,
// minimizes it over the supplied (n-1)-tuples, and cross-checks the result
// against GD_n of `dist` within Monte Carlo error (6 standard errors).
double check_n_minus_1_elicitability(GiniOrder n, const TupleSet& tuples,
                                     const ParametricDistribution& dist);

struct BacktestReport {
  double mean_score_a = 0.0;
  double mean_score_b = 0.0;
  double mean_diff = 0.0;   // negative favors forecast a
  double t_statistic = 0.0;
  std::size_t tuple_count = 0;
  bool degenerate_variance = false;
};

// Paired comparison of two forecasts under one score: per-tuple score
// differences, their mean, and the one-sample t statistic.
BacktestReport comparative_backtest(const ScoreVariant& variant, double forecast_a,
                                    double forecast_b, const TupleSet& tuples);

}  // namespace ginin

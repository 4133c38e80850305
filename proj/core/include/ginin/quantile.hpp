#pragma once

#include <variant>
#include <vector>

#include "ginin/distributions.hpp"

namespace ginin {

// Left-continuous step quantile function: level j holds on (t_{j-1}, t_j],
// with breakpoints t_0 = 0 < t_1 < ... < t_k = 1 and nondecreasing levels.
// Adjacent cells with equal levels are merged on construction.
class StepQuantile {
 public:
  // breakpoints must include both endpoints 0 and 1; levels has one entry per
  // cell (breakpoints.size() - 1).
  StepQuantile(std::vector<double> breakpoints, std::vector<double> levels);

  // Empirical quantile of a nondecreasing sample: cell i is ((i-1)/N, i/N].
  static StepQuantile empirical(const std::vector<double>& sorted_values);

  double value(double t) const;  // t in (0,1)

  std::size_t cell_count() const { return levels_.size(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& levels() const { return levels_; }

  double mean() const;
  double variance() const;

  // Integral of the quantile over (0, p].
  double partial_integral(double p) const;

  // Distribution of -X: levels negated and reversed, breakpoints mirrored.
  StepQuantile reflected() const;

  StepQuantile shifted(double c) const;
  StepQuantile scaled(double factor) const;  // factor > 0

 private:
  std::vector<double> breakpoints_;
  std::vector<double> levels_;
};

// A quantile function in either step (empirical / grouped) or parametric form;
// the integration substrate for every deviation computed here.
class QuantileFunction {
 public:
  QuantileFunction(StepQuantile step) : impl_(std::move(step)) {}
  QuantileFunction(ParametricDistribution dist) : impl_(std::move(dist)) {}

  bool is_step() const { return std::holds_alternative<StepQuantile>(impl_); }
  const StepQuantile& step() const { return std::get<StepQuantile>(impl_); }
  const ParametricDistribution& parametric() const {
    return std::get<ParametricDistribution>(impl_);
  }

  double operator()(double t) const;
  double mean() const;

  // True when the underlying support is bounded below by zero.
  bool is_nonnegative() const;

 private:
  std::variant<StepQuantile, ParametricDistribution> impl_;
};

}  // namespace ginin

#include "ginin/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ginin/summation.hpp"

namespace ginin {

StepQuantile::StepQuantile(std::vector<double> breakpoints, std::vector<double> levels) {
  if (breakpoints.size() < 2 || levels.size() + 1 != breakpoints.size()) {
    throw std::domain_error("StepQuantile: needs k+1 breakpoints for k levels, k >= 1");
  }
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
    throw std::domain_error("StepQuantile: breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) {
      throw std::domain_error("StepQuantile: breakpoints must be strictly increasing");
    }
  }
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] < levels[i - 1]) {
      throw std::domain_error("StepQuantile: levels must be nondecreasing");
    }
  }
  for (double q : levels) {
    if (!std::isfinite(q)) throw std::domain_error("StepQuantile: levels must be finite");
  }
  // Merge runs of equal levels.
  breakpoints_.push_back(0.0);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!levels_.empty() && levels[i] == levels_.back()) {
      breakpoints_.back() = breakpoints[i + 1];
    } else {
      levels_.push_back(levels[i]);
      breakpoints_.push_back(breakpoints[i + 1]);
    }
  }
}

StepQuantile StepQuantile::empirical(const std::vector<double>& sorted_values) {
  const std::size_t n = sorted_values.size();
  if (n == 0) throw std::domain_error("StepQuantile::empirical: empty sample");
  std::vector<double> breakpoints(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    breakpoints[i] = static_cast<double>(i) / static_cast<double>(n);
  }
  return StepQuantile(std::move(breakpoints), sorted_values);
}

double StepQuantile::value(double t) const {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("StepQuantile::value: t must lie in (0,1)");
  const auto it = std::lower_bound(breakpoints_.begin() + 1, breakpoints_.end(), t);
  return levels_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepQuantile::mean() const {
  CompensatedSum acc;
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    acc.add(levels_[j] * (breakpoints_[j + 1] - breakpoints_[j]));
  }
  return acc.value();
}

double StepQuantile::variance() const {
  const double m = mean();
  CompensatedSum acc;
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    const double d = levels_[j] - m;
    acc.add(d * d * (breakpoints_[j + 1] - breakpoints_[j]));
  }
  return acc.value();
}

double StepQuantile::partial_integral(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("StepQuantile::partial_integral: p must lie in [0,1]");
  }
  CompensatedSum acc;
  for (std::size_t j = 0; j < levels_.size() && breakpoints_[j] < p; ++j) {
    const double hi = std::min(breakpoints_[j + 1], p);
    acc.add(levels_[j] * (hi - breakpoints_[j]));
  }
  return acc.value();
}

StepQuantile StepQuantile::reflected() const {
  const std::size_t k = levels_.size();
  std::vector<double> breakpoints(breakpoints_.size());
  std::vector<double> levels(k);
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    breakpoints[i] = 1.0 - breakpoints_[breakpoints_.size() - 1 - i];
  }
  breakpoints.front() = 0.0;
  breakpoints.back() = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    levels[j] = -levels_[k - 1 - j];
  }
  return StepQuantile(std::move(breakpoints), std::move(levels));
}

StepQuantile StepQuantile::shifted(double c) const {
  std::vector<double> levels(levels_);
  for (double& q : levels) q += c;
  return StepQuantile(breakpoints_, std::move(levels));
}

StepQuantile StepQuantile::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::domain_error("StepQuantile::scaled: factor must be positive");
  std::vector<double> levels(levels_);
  for (double& q : levels) q *= factor;
  return StepQuantile(breakpoints_, std::move(levels));
}

double QuantileFunction::operator()(double t) const {
  if (is_step()) return step().value(t);
  return parametric().quantile(t);
}

double QuantileFunction::mean() const {
  if (is_step()) return step().mean();
  return parametric().mean();
}

bool QuantileFunction::is_nonnegative() const {
  if (is_step()) return step().levels().front() >= 0.0;
  const auto& d = parametric();
  switch (d.family()) {
    case ParametricDistribution::Family::TwoPoint:
      return d.param(0) >= 0.0;
    default:
      return true;
  }
}

}  // namespace ginin

#pragma once

#include <cstdint>
#include <vector>

#include "ginin/distortion.hpp"
#include "ginin/quantile.hpp"

namespace ginin {

// Affine combination sum_i a_i GD_i. Weight a_1 applies to the classical
// deviation, which equals the order-2 one. When constructed with simplex(),
// the weights must be nonnegative and sum to one; such combinations keep the
// full set of Gini properties.
class GiniCombination {
 public:
  explicit GiniCombination(std::vector<double> weights);
  static GiniCombination simplex(std::vector<double> weights);

  const std::vector<double>& weights() const { return weights_; }
  bool on_simplex() const { return simplex_; }

 private:
  GiniCombination(std::vector<double> weights, bool simplex);
  std::vector<double> weights_;
  bool simplex_;
};

// n-th order Gini deviation (1/n) E[max - min] over n iid draws, computed
// from the quantile representation. Step quantiles are integrated exactly
// through the antiderivative (t^n + (1-t)^n)/n; parametric ones use the
// closed form when the family has one and adaptive quadrature otherwise.
double gd_n(const StepQuantile& q, GiniOrder n);
double gd_n(const QuantileFunction& q, GiniOrder n);

// Normalized version GD_n / mean; requires a nonnegative quantile with
// positive mean. Values lie in [0,1).
double gc_n(const StepQuantile& q, GiniOrder n);
double gc_n(const QuantileFunction& q, GiniOrder n);

// sum_i a_i GD_i(q) with GD_1 evaluated as GD_2.
double gd_combination(const QuantileFunction& q, const GiniCombination& weights);

// Lorenz curve L(p) = int_0^p q / int_0^1 q for nonnegative q with positive
// mean. L(0) = 0, L(1) = 1, convex and nondecreasing.
double lorenz(const StepQuantile& q, double p);
double lorenz(const QuantileFunction& q, double p);

// Monte Carlo evaluation of the covariance form
// GD_n(X) = Cov(X, U^{n-1} - (1-U)^{n-1}), X = q(U), U uniform.
// Deterministic for a fixed seed; converges at the usual N^{-1/2} rate.
double gd_n_cov_oracle(const ParametricDistribution& dist, GiniOrder n, std::size_t samples,
                       std::uint64_t seed);

// Quadrature evaluation of the quantile integral for a parametric
// distribution, regardless of whether a closed form exists.
double gd_n_quadrature(const ParametricDistribution& dist, GiniOrder n);

}  // namespace ginin

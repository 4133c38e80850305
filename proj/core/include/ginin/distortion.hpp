#pragma once

#include <vector>

namespace ginin {

// Number of independent draws entering a Gini deviation. Only n >= 2 defines
// a measure of its own; order 1 is accepted solely inside affine combinations,
// where it aliases order 2.
class GiniOrder {
 public:
  explicit GiniOrder(int n);
  int value() const { return n_; }

 private:
  int n_;
};

// x^m for x in [0,1], computed as exp(m*log x) with the endpoints handled
// exactly. Stable for m up to several hundred.
double unit_pow(double x, double m);

// t^{n-1} - (1-t)^{n-1}, the quantile weight of the n-th order deviation.
// The caller supplies u = 1-t separately so that whichever of t,u is tiny can
// be carried at full precision.
double phi_weight(GiniOrder n, double t, double u);
double phi_weight(GiniOrder n, double t);

// Antiderivative of the quantile weight: (t^n + (1-t)^n) / n.
double phi_antiderivative(GiniOrder n, double t, double u);
double phi_antiderivative(GiniOrder n, double t);

// The concave distortion generating the n-th order deviation:
// h_n(t) = (1 - t^n - (1-t)^n) / n. Throws std::domain_error for t outside [0,1].
double distortion_h(GiniOrder n, double t);

// Derivative h_n'(t) = (1-t)^{n-1} - t^{n-1}.
double distortion_h_derivative(GiniOrder n, double t);

// A polynomial distortion h(t) = sum_{i>=1} c_i t^i (the constant term is
// forced to zero so h(0) = 0). The canonical instance h_n additionally knows
// its order and exposes the exact antiderivative of its quantile weight.
class DistortionFunction {
 public:
  explicit DistortionFunction(std::vector<double> power_coefficients);
  static DistortionFunction canonical(GiniOrder n);

  double operator()(double t) const;
  double derivative(double t) const;

  // Defined for the canonical h_n only.
  double weight_antiderivative(double t) const;

  bool is_canonical() const { return canonical_n_ != 0; }
  int canonical_order() const { return canonical_n_; }
  int degree() const;

  // Coefficients of t^1..t^degree. For canonical orders above 40 the
  // expansion is not materialized (binomials overflow useful precision).
  const std::vector<double>& power_coefficients() const { return coeffs_; }

 private:
  DistortionFunction(int canonical_n, std::vector<double> coeffs);
  int canonical_n_ = 0;
  std::vector<double> coeffs_;
};

// Coefficients a_1..a_n of h_n written in powers of (1-t):
// h_n(t) = sum_k a_k (1-t)^k. For odd n the degree-n coefficient vanishes,
// which is what makes the (n-1)-observation score construction possible.
std::vector<double> hn_one_minus_t_coefficients(GiniOrder n);

// Binomial coefficient as a double, exact for the ranges used here.
double binomial(int n, int k);

}  // namespace ginin

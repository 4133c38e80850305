#pragma once

namespace ginin {

// Iteration controls for the inverse incomplete-beta solver.
struct SpecialFunctionTolerances {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  int max_iterations = 200;
};

// Standard normal distribution function.
double normal_cdf(double z);

// Inverse standard normal distribution function, accurate to about 1e-9
// absolute (Acklam's rational approximation plus one Halley refinement).
// Throws std::domain_error outside (0,1).
double normal_quantile(double p);

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Beta function B(a,b) for a,b > 0, computed through log-gamma.
double beta_function(double a, double b);

// Regularized incomplete beta I_x(a,b) for x in [0,1], a,b > 0.
double incomplete_beta(double a, double b, double x);

// Inverse of I_x(a,b) in x: returns x with I_x(a,b) = p. Bisection-bracketed
// Newton; throws ginin::convergence_error if it fails to localize the root
// within the iteration budget.
double incomplete_beta_inverse(double a, double b, double p,
                               const SpecialFunctionTolerances& tol = {});

}  // namespace ginin

#include "ginin/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ginin/errors.hpp"

namespace ginin {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt2Pi = 2.5066282746310005024;

}  // namespace

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / kSqrt2);
}

namespace {

// Acklam's rational approximation for the inverse normal CDF.
double acklam_quantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log1p(-p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile: p must lie in (0,1)");
  }
  double z = acklam_quantile(p);
  // One Halley step against erfc sharpens the approximation to ~1e-15 where
  // erfc itself is well conditioned.
  const double e = 0.5 * std::erfc(-z / kSqrt2) - p;
  const double u = e * kSqrt2Pi * std::exp(z * z / 2.0);
  if (std::isfinite(u)) {
    z = z - u / (1.0 + z * u / 2.0);
  }
  return z;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double beta_function(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta_function: a,b must be positive");
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

namespace {

// Lentz continued fraction for the incomplete beta, valid for x < (a+1)/(a+b+2).
double ibeta_continued_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double f = d;
  for (int m = 1; m <= 500; ++m) {
    const double m2 = 2.0 * m;
    double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    f *= d * c;
    num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    f *= delta;
    if (std::fabs(delta - 1.0) < eps) return f;
  }
  throw convergence_error("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("incomplete_beta: a,b must be positive");
  if (x < 0.0 || x > 1.0) throw std::domain_error("incomplete_beta: x must lie in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front =
      a * std::log(x) + b * std::log1p(-x) + log_gamma(a + b) - log_gamma(a) - log_gamma(b);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * ibeta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) + log_gamma(a + b) - log_gamma(a) -
                        log_gamma(b)) *
                   ibeta_continued_fraction(b, a, 1.0 - x) / b;
}

double incomplete_beta_inverse(double a, double b, double p,
                               const SpecialFunctionTolerances& tol) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("incomplete_beta_inverse: a,b must be positive");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("incomplete_beta_inverse: p must lie in [0,1]");
  }
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;

  // Initial guess: small-p power-law asymptote I_x ~ x^a / (a B(a,b)), with the
  // mirrored form near 1, clipped into (0,1); the mean as a midrange fallback.
  double x;
  const double log_b = log_gamma(a) + log_gamma(b) - log_gamma(a + b);
  const double x_small = std::exp((std::log(p) + std::log(a) + log_b) / a);
  const double x_large = 1.0 - std::exp((std::log1p(-p) + std::log(b) + log_b) / b);
  if (x_small < 0.5 && x_small > 0.0) {
    x = x_small;
  } else if (x_large > 0.5 && x_large < 1.0) {
    x = x_large;
  } else {
    x = a / (a + b);
  }
  x = std::min(std::max(x, 1e-300), 1.0 - 1e-16);

  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < tol.max_iterations; ++it) {
    const double f = incomplete_beta(a, b, x) - p;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    if (std::fabs(f) <= tol.abs_tol * std::max(1.0, p) ||
        (hi - lo) <= tol.rel_tol * std::max(x, 1e-300)) {
      return x;
    }
    // Newton step using the beta density, bisection if it leaves the bracket.
    const double ln_pdf = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_b;
    double step_x = x;
    const double pdf = std::exp(ln_pdf);
    if (pdf > 0.0 && std::isfinite(pdf)) {
      step_x = x - f / pdf;
    }
    if (!(step_x > lo && step_x < hi)) {
      step_x = 0.5 * (lo + hi);
    }
    x = step_x;
  }
  throw convergence_error("incomplete_beta_inverse: exceeded max_iterations");
}

}  // namespace ginin

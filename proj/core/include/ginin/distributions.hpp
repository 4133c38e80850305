#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ginin/distortion.hpp"

namespace ginin {

// Catalog of parametric families with stable quantile/CDF/survival numerics,
// deterministic inverse-transform sampling, and closed-form deviations where
// they exist. Instances are immutable and cheap to copy.
class ParametricDistribution {
 public:
  enum class Family { Bernoulli, TwoPoint, Beta, LogNormal, Exponential, Pareto };

  static ParametricDistribution bernoulli(double p);
  static ParametricDistribution two_point(double x, double y, double p_at_y);
  static ParametricDistribution beta(double a, double b);
  static ParametricDistribution log_normal(double mu, double sigma);
  static ParametricDistribution exponential(double lambda);
  static ParametricDistribution pareto(double alpha, double x_m);

  Family family() const { return family_; }
  const std::string& name() const { return name_; }

  // Left t-quantile. Throws std::domain_error outside (0,1).
  double quantile(double t) const;

  // Quantile evaluated from (t, 1-t) supplied separately, so that callers
  // integrating near an endpoint keep full precision in the small coordinate.
  double quantile_from_tails(double t, double one_minus_t) const;

  double cdf(double x) const;
  double survival(double x) const;

  // Density; throws std::domain_error for the discrete families.
  double density(double x) const;

  bool is_discrete() const;
  double mean() const;  // throws std::domain_error when infinite (Pareto alpha <= 1)

  // Closed-form GD_n / GC_n where the family admits one (Bernoulli, TwoPoint,
  // Exponential, Pareto). Beta and LogNormal return nullopt and callers fall
  // back to quadrature.
  std::optional<double> closed_form_gd(GiniOrder n) const;
  std::optional<double> closed_form_gc(GiniOrder n) const;

  // Deterministic inverse-transform sample.
  std::vector<double> sample(std::size_t count, std::uint64_t seed) const;

  double param(std::size_t i) const { return params_[i]; }

 private:
  ParametricDistribution(Family family, std::string name, double p0, double p1, double p2);
  Family family_;
  std::string name_;
  double params_[3];
};

// B(n, c) for integer n >= 1 and c > 0, evaluated by the exact Gamma
// recursion B(n,c) = prod_{j=0}^{n-1} (j+1)/(c+j).
double beta_integer_first(int n, double c);

}  // namespace ginin

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ginin/distortion.hpp"
#include "ginin/distributions.hpp"
#include "ginin/quantile.hpp"

namespace ginin {

struct RatioBound {
  double lower;
  double upper;
  std::string lower_witness;
  std::string upper_witness;
};

// Sharp upper bound for GD_n / SD over nonconstant square-integrable
// distributions: sqrt(2/(2n-1) - 2((n-1)!)^2/(2n-1)!). Exact rationals up to
// n = 20, log-gamma beyond. Equals 1/sqrt(3) at n = 2,3 and strictly
// decreases from n = 3 on.
double sd_ratio_upper_bound(GiniOrder n);

// Sharp range of GD_n / GD_m over nonconstant distributions, 2 <= m <= n:
// [m(1-2^{1-n}) / (n(1-2^{1-m})), 1]. The lower bound is attained by the
// symmetric two-point distribution; the upper bound is a supremum approached
// as the top mass vanishes, never attained.
RatioBound gd_ratio_bounds(GiniOrder m, GiniOrder n);

// Range of rho_h / rho_g over nonconstant distributions for two positive
// distortions: [inf h/g, sup h/g] on (0,1), located by a dense scan with
// log-spaced endpoint refinement plus local ternary search; endpoint limits
// come from the leading polynomial coefficients.
RatioBound choquet_ratio_bounds(const DistortionFunction& h, const DistortionFunction& g,
                                std::size_t grid_size);

// Step-discretized maximizer of GD_n / SD from the sharpness construction
// q(u) = (u^{n-1} - (1-u)^{n-1}) / ||h_n'||_2, on a uniform grid. The ratio on
// the witness approaches the bound at rate O(1/grid_size).
StepQuantile sd_bound_witness(GiniOrder n, std::size_t grid_size);

// GD_2..GD_{n_max} for a parametric distribution. Verifies the sequence is
// nonincreasing (up to numerical tolerance) before returning it.
std::vector<double> monotonicity_check(const ParametricDistribution& dist, int n_max);

}  // namespace ginin

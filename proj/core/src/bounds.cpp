#include "ginin/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ginin/errors.hpp"
#include "ginin/gini.hpp"
#include "ginin/special_functions.hpp"

namespace ginin {

namespace {

// 2((n-1)!)^2 / (2n-1)! reduced to 2(n-1)! / prod_{k=n}^{2n-1} k. Exact in
// integer arithmetic through n = 20; log-gamma beyond.
double central_factorial_ratio(int n) {
  if (n <= 20) {
    unsigned long long numerator = 2;
    for (int k = 2; k < n; ++k) numerator *= static_cast<unsigned long long>(k);
    unsigned __int128 denominator = 1;
    for (int k = n; k <= 2 * n - 1; ++k) denominator *= static_cast<unsigned>(k);
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  return std::exp(std::log(2.0) + 2.0 * log_gamma(n) - log_gamma(2.0 * n));
}

}  // namespace

double sd_ratio_upper_bound(GiniOrder order) {
  const int n = order.value();
  return std::sqrt(2.0 / (2.0 * n - 1.0) - central_factorial_ratio(n));
}

RatioBound gd_ratio_bounds(GiniOrder m_order, GiniOrder n_order) {
  const int m = m_order.value();
  const int n = n_order.value();
  if (m > n) throw std::domain_error("gd_ratio_bounds: requires m <= n");
  const double lower =
      m * (1.0 - std::exp2(1.0 - n)) / (n * (1.0 - std::exp2(1.0 - m)));
  return RatioBound{lower, 1.0, "TwoPoint with p = 0.5 (attains the lower bound)",
                    "TwoPoint with p -> 0 (supremum, approached but not attained)"};
}

namespace {

// Order and value of the first nonvanishing derivative of a polynomial
// distortion at an endpoint; drives the L'Hopital endpoint limits.
struct LeadingTerm {
  int order;
  double value;
};

LeadingTerm leading_at_zero(const DistortionFunction& h) {
  if (h.is_canonical()) return {1, 1.0};  // h_n(t) = t + O(t^2)
  const auto& c = h.power_coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] != 0.0) return {static_cast<int>(k + 1), c[k]};
  }
  return {0, 0.0};
}

LeadingTerm leading_at_one(const DistortionFunction& h) {
  if (h.is_canonical()) return {1, 1.0};  // symmetric
  const auto& c = h.power_coefficients();
  // Expand h(1-u) in powers of u; coefficient of u^k is
  // sum_i c_i C(i,k) (-1)^k.
  for (std::size_t k = 1; k <= c.size(); ++k) {
    double coeff = 0.0;
    for (std::size_t i = k; i <= c.size(); ++i) {
      coeff += c[i - 1] * binomial(static_cast<int>(i), static_cast<int>(k));
    }
    coeff *= (k % 2 == 0) ? 1.0 : -1.0;
    if (std::fabs(coeff) > 1e-13) return {static_cast<int>(k), coeff};
  }
  return {0, 0.0};
}

double endpoint_limit(const LeadingTerm& top, const LeadingTerm& bottom) {
  if (bottom.order == 0) return std::numeric_limits<double>::quiet_NaN();
  if (top.order == 0) return 0.0;
  if (top.order < bottom.order) return std::numeric_limits<double>::infinity();
  if (top.order > bottom.order) return 0.0;
  return top.value / bottom.value;
}

void check_distortion_in_class(const DistortionFunction& h, const char* label) {
  if (h.is_canonical()) return;
  double at_one = 0.0;
  for (double c : h.power_coefficients()) at_one += c;
  if (std::fabs(at_one) > 1e-10) {
    throw std::domain_error(std::string("choquet_ratio_bounds: ") + label +
                            " must vanish at t = 1");
  }
}

}  // namespace

RatioBound choquet_ratio_bounds(const DistortionFunction& h, const DistortionFunction& g,
                                std::size_t grid_size) {
  if (grid_size < 8) throw std::domain_error("choquet_ratio_bounds: grid too small");
  check_distortion_in_class(h, "numerator distortion");
  check_distortion_in_class(g, "denominator distortion");

  // Uniform interior grid plus log-spaced points toward both endpoints, where
  // the ratio limits live.
  std::vector<double> grid;
  grid.reserve(grid_size + 128);
  for (std::size_t i = 1; i < grid_size; ++i) {
    grid.push_back(static_cast<double>(i) / static_cast<double>(grid_size));
  }
  for (double e = 1e-9; e < 1.0 / static_cast<double>(grid_size); e *= 2.0) {
    grid.push_back(e);
    grid.push_back(1.0 - e);
  }
  std::sort(grid.begin(), grid.end());

  std::vector<double> ratio(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ht = h(grid[i]);
    const double gt = g(grid[i]);
    if (!(ht > 0.0) || !(gt > 0.0)) {
      throw std::domain_error("choquet_ratio_bounds: distortion not positive on (0,1)");
    }
    ratio[i] = ht / gt;
  }

  const auto ratio_at = [&](double t) { return h(t) / g(t); };
  // Local refinement around every grid extremum (ternary search on the
  // bracketing cell pair).
  const auto refine = [&](std::size_t i, bool minimize) {
    double lo = grid[i == 0 ? 0 : i - 1];
    double hi = grid[std::min(i + 1, grid.size() - 1)];
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      const bool take_left = minimize ? ratio_at(m1) < ratio_at(m2) : ratio_at(m1) > ratio_at(m2);
      if (take_left) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
    return ratio_at(0.5 * (lo + hi));
  };

  double inf_value = std::numeric_limits<double>::infinity();
  double sup_value = -std::numeric_limits<double>::infinity();
  double inf_arg = 0.0, sup_arg = 0.0;
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    const bool local_min = (i == 0 || ratio[i] <= ratio[i - 1]) &&
                           (i + 1 == ratio.size() || ratio[i] <= ratio[i + 1]);
    const bool local_max = (i == 0 || ratio[i] >= ratio[i - 1]) &&
                           (i + 1 == ratio.size() || ratio[i] >= ratio[i + 1]);
    if (local_min) {
      const double v = refine(i, true);
      if (v < inf_value) {
        inf_value = v;
        inf_arg = grid[i];
      }
    }
    if (local_max) {
      const double v = refine(i, false);
      if (v > sup_value) {
        sup_value = v;
        sup_arg = grid[i];
      }
    }
  }

  const double limit0 = endpoint_limit(leading_at_zero(h), leading_at_zero(g));
  const double limit1 = endpoint_limit(leading_at_one(h), leading_at_one(g));
  std::string inf_witness, sup_witness;
  for (double limit : {limit0, limit1}) {
    if (std::isnan(limit)) continue;
    if (limit < inf_value) {
      inf_value = limit;
      inf_witness = "Bernoulli(t) as t approaches an endpoint (infimum limit)";
    }
    if (limit > sup_value) {
      sup_value = limit;
      sup_witness = "Bernoulli(t) as t approaches an endpoint (supremum limit)";
    }
  }
  if (inf_witness.empty()) {
    std::ostringstream os;
    os << "Bernoulli(t) with t near " << inf_arg;
    inf_witness = os.str();
  }
  if (sup_witness.empty()) {
    std::ostringstream os;
    os << "Bernoulli(t) with t near " << sup_arg;
    sup_witness = os.str();
  }
  return RatioBound{inf_value, sup_value, inf_witness, sup_witness};
}

StepQuantile sd_bound_witness(GiniOrder n, std::size_t grid_size) {
  if (grid_size < 2) throw std::domain_error("sd_bound_witness: grid too small");
  const double norm = sd_ratio_upper_bound(n);
  std::vector<double> breakpoints(grid_size + 1);
  std::vector<double> levels(grid_size);
  for (std::size_t j = 0; j <= grid_size; ++j) {
    breakpoints[j] = static_cast<double>(j) / static_cast<double>(grid_size);
  }
  for (std::size_t j = 0; j < grid_size; ++j) {
    const double mid = (static_cast<double>(j) + 0.5) / static_cast<double>(grid_size);
    levels[j] = phi_weight(n, mid, 1.0 - mid) / norm;
  }
  return StepQuantile(std::move(breakpoints), std::move(levels));
}

std::vector<double> monotonicity_check(const ParametricDistribution& dist, int n_max) {
  if (n_max < 2) throw std::domain_error("monotonicity_check: n_max must be at least 2");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n_max - 1));
  const QuantileFunction q(dist);
  for (int n = 2; n <= n_max; ++n) {
    values.push_back(gd_n(q, GiniOrder(n)));
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1] * (1.0 + 1e-9) + 1e-15) {
      throw convergence_error("monotonicity_check: computed sequence is not nonincreasing");
    }
  }
  return values;
}

}  // namespace ginin

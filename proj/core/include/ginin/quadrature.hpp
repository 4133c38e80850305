#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "ginin/errors.hpp"

namespace ginin {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  // Dyadic panels per side; the mesh reaches within 2^-(tail_levels+1) of each
  // endpoint, so endpoint truncation is far below the integration tolerance
  // for any integrable quantile singularity.
  int tail_levels = 100;
  int max_refinements = 7;
};

namespace detail {

// 16-point Gauss-Legendre rule on [-1,1].
inline constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

// Integrates f over one panel [a,b] expressed in the "side coordinate" s,
// where s is t itself on the left half and u = 1-t on the right half.
// The callback always receives (t, u).
template <typename F>
double panel_integral(F&& f, double a, double b, bool right_side) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
    const double s1 = mid - half * kGlNodes[i];
    const double s2 = mid + half * kGlNodes[i];
    double v1, v2;
    if (right_side) {
      v1 = f(1.0 - s1, s1);
      v2 = f(1.0 - s2, s2);
    } else {
      v1 = f(s1, 1.0 - s1);
      v2 = f(s2, 1.0 - s2);
    }
    acc += kGlWeights[i] * (v1 + v2);
  }
  return acc * half;
}

}  // namespace detail

// Adaptive composite Gauss-Legendre over (0,1) for integrands of the form
// q(t) * w(t) where q may diverge at either endpoint (any L^1 singularity).
// Panels are dyadically graded toward both endpoints; every panel is split in
// half per refinement until two successive totals agree to rel_tol.
// Throws convergence_error when the refinement budget is exhausted.
template <typename F>
double integrate_unit(F&& f, const QuadratureOptions& opts = {}) {
  double previous = 0.0;
  bool have_previous = false;
  for (int refine = 0; refine <= opts.max_refinements; ++refine) {
    const std::int64_t splits = std::int64_t{1} << refine;
    double total = 0.0;
    for (int side = 0; side < 2; ++side) {
      const bool right = side == 1;
      for (int level = 1; level <= opts.tail_levels; ++level) {
        const double lo = std::ldexp(1.0, -(level + 1));
        const double hi = std::ldexp(1.0, -level);
        const double width = (hi - lo) / static_cast<double>(splits);
        for (std::int64_t j = 0; j < splits; ++j) {
          const double a = lo + width * static_cast<double>(j);
          total += detail::panel_integral(f, a, a + width, right);
        }
      }
    }
    if (have_previous &&
        std::fabs(total - previous) <= std::max(opts.rel_tol * std::fabs(total), opts.abs_tol)) {
      return total;
    }
    previous = total;
    have_previous = true;
  }
  throw convergence_error("integrate_unit: refinement budget exhausted without convergence");
}

}  // namespace ginin

#include "ginin/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "ginin/errors.hpp"
#include "ginin/gini.hpp"
#include "ginin/quantile.hpp"
#include "ginin/rng.hpp"
#include "ginin/special_functions.hpp"
#include "ginin/summation.hpp"

namespace ginin {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw std::domain_error("Sample: needs at least two observations");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::domain_error("Sample: observations must be finite");
  }
  std::sort(values_.begin(), values_.end());
}

Sample Sample::from_sorted(std::vector<double> values) {
  if (values.size() < 2) throw std::domain_error("Sample: needs at least two observations");
  Sample s;
  s.values_ = std::move(values);
  return s;
}

double Sample::mean() const {
  CompensatedSum acc;
  for (double v : values_) acc.add(v);
  return acc.value() / static_cast<double>(values_.size());
}

double estimate_gd(const Sample& s, GiniOrder n, WeightScheme scheme) {
  const auto& x = s.values();
  const auto N = static_cast<double>(x.size());
  CompensatedSum acc;
  if (scheme == WeightScheme::PaperWeights) {
    for (std::size_t i = 1; i <= x.size(); ++i) {
      const double t = static_cast<double>(i) / N;
      const double u = static_cast<double>(x.size() - i) / N;
      acc.add(x[i - 1] * phi_weight(n, t, u));
    }
    return acc.value() / N;
  }
  // ExactChoquet in Abel-summed form; identical to gd_n on the empirical
  // step quantile and exactly zero on constant samples.
  acc.add((x.back() - x.front()) * phi_antiderivative(n, 0.0, 1.0));
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double t = static_cast<double>(i) / N;
    acc.add(-(x[i] - x[i - 1]) * phi_antiderivative(n, t, 1.0 - t));
  }
  return acc.value();
}

double estimate_gc(const Sample& s, GiniOrder n, WeightScheme scheme) {
  if (s.values().front() < 0.0) {
    throw std::domain_error("estimate_gc: sample must be nonnegative");
  }
  const double m = s.mean();
  if (!(m > 0.0)) throw std::domain_error("estimate_gc: sample mean must be positive");
  return estimate_gd(s, n, scheme) / m;
}

namespace {

// One evaluation of the truncated x-space variance integral
//   I(delta) = int int w(F(x)) w(F(y)) (F(x^y) - F(x)F(y)) dx dy
// over [F^{-1}(delta), F^{-1}(1-delta)], with w = phi_n (optionally recentred
// by GC_n). Nodes are placed by a symmetric cubic-graded map in t, so x_i =
// F^{-1}(t_i) carries F(x_i) = t_i exactly and no CDF evaluation is needed.
// The rank-one structure of the kernel reduces the double sum to one pass:
//   I = sum_i a_i^2 t_i u_i + 2 sum_i a_i u_i * (prefix sum of a_j t_j).
double variance_integral_once(const ParametricDistribution& dist, GiniOrder n, double gc_shift,
                              double delta, std::size_t points) {
  const auto grade = [](double s) { return s * s * s * (10.0 + s * (-15.0 + 6.0 * s)); };
  std::vector<double> t(points), u(points), x(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(points - 1);
    const double ti = delta + (1.0 - 2.0 * delta) * grade(s);
    const double ui = delta + (1.0 - 2.0 * delta) * grade(1.0 - s);
    t[i] = ti;
    u[i] = ui;
    x[i] = dist.quantile_from_tails(ti, ui);
  }
  CompensatedSum diag, cross;
  double prefix = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double w_lo = i == 0 ? 0.0 : 0.5 * (x[i] - x[i - 1]);
    const double w_hi = i + 1 == points ? 0.0 : 0.5 * (x[i + 1] - x[i]);
    const double a = (phi_weight(n, t[i], u[i]) - gc_shift) * (w_lo + w_hi);
    diag.add(a * a * t[i] * u[i]);
    cross.add(a * u[i] * prefix);
    prefix += a * t[i];
  }
  return diag.value() + 2.0 * cross.value();
}

double variance_integral(const ParametricDistribution& dist, GiniOrder n, double gc_shift,
                         double delta) {
  constexpr double mesh_rel_tol = 1e-6;
  std::size_t points = 4097;
  double previous = variance_integral_once(dist, n, gc_shift, delta, points);
  for (int refine = 0; refine < 9; ++refine) {
    points = 2 * points - 1;
    const double current = variance_integral_once(dist, n, gc_shift, delta, points);
    if (std::fabs(current - previous) <= mesh_rel_tol * std::max(std::fabs(current), 1e-12)) {
      return current;
    }
    previous = current;
  }
  throw convergence_error("asymptotic variance: mesh refinement did not converge");
}

double asymptotic_variance_impl(const ParametricDistribution& dist, GiniOrder n, double gc_shift) {
  if (dist.is_discrete()) {
    throw std::domain_error(
        "asymptotic variance: distribution must have a density on a convex support");
  }
  if (dist.family() == ParametricDistribution::Family::Pareto && dist.param(0) <= 2.0) {
    throw std::domain_error(
        "asymptotic variance: Pareto with alpha <= 2 violates the moment condition");
  }
  constexpr double delta_rel_tol = 1e-4;
  double delta = 1e-6;
  double previous = variance_integral(dist, n, gc_shift, delta);
  while (true) {
    delta *= 0.5;
    const double current = variance_integral(dist, n, gc_shift, delta);
    if (std::fabs(current - previous) <= delta_rel_tol * std::max(std::fabs(current), 1e-12)) {
      return current;
    }
    if (delta <= 1e-12) {
      throw convergence_error(
          "asymptotic variance: truncation refinement still moving at delta = 1e-12");
    }
    previous = current;
  }
}

}  // namespace

double asymptotic_variance_gd(const ParametricDistribution& dist, GiniOrder n) {
  return asymptotic_variance_impl(dist, n, 0.0);
}

double asymptotic_variance_gc(const ParametricDistribution& dist, GiniOrder n) {
  const double m = dist.mean();
  if (!(m > 0.0)) throw std::domain_error("asymptotic_variance_gc: mean must be positive");
  const double gc = gc_n(QuantileFunction(dist), n);
  return asymptotic_variance_impl(dist, n, gc) / (m * m);
}

namespace {

double estimate_target(const Sample& s, GiniOrder n, EstimandTarget target, WeightScheme scheme) {
  return target == EstimandTarget::GD ? estimate_gd(s, n, scheme) : estimate_gc(s, n, scheme);
}

// Type-7 quantile of an ascending vector.
double sorted_quantile(const std::vector<double>& v, double p) {
  if (v.size() == 1) return v.front();
  const double h = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= v.size()) return v.back();
  const double frac = h - static_cast<double>(lo);
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

std::uint64_t bounded_index(SplitMix64& stream, std::uint64_t bound) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(stream.next_u64()) * bound) >> 64);
}

}  // namespace

EstimateReport bootstrap_ci(const Sample& s, GiniOrder n, EstimandTarget target, double level,
                            std::size_t replications, std::uint64_t seed, WeightScheme scheme) {
  if (!(level > 0.0 && level < 1.0)) throw std::domain_error("bootstrap_ci: level must lie in (0,1)");
  if (replications == 0) throw std::domain_error("bootstrap_ci: needs at least one replication");

  const auto& x = s.values();
  const std::size_t N = x.size();
  std::vector<double> estimates(replications);
  std::vector<std::uint32_t> counts(N);
  std::vector<double> resample(N);
  for (std::size_t r = 0; r < replications; ++r) {
    SplitMix64 stream = replication_stream(seed, r);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < N; ++i) {
      ++counts[bounded_index(stream, N)];
    }
    // The original sample is sorted, so expanding the counts in order yields
    // the resample's order statistics without another sort.
    std::size_t pos = 0;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::uint32_t c = 0; c < counts[i]; ++c) resample[pos++] = x[i];
    }
    estimates[r] = estimate_target(Sample::from_sorted(resample), n, target, scheme);
  }
  std::sort(estimates.begin(), estimates.end());

  EstimateReport report;
  report.point = estimate_target(s, n, target, scheme);
  report.scheme = scheme;
  report.ci_level = level;
  report.method = "bootstrap";
  report.ci_lo = sorted_quantile(estimates, 0.5 * (1.0 - level));
  report.ci_hi = sorted_quantile(estimates, 0.5 * (1.0 + level));
  report.ci_lo = std::min(report.ci_lo, report.point);
  report.ci_hi = std::max(report.ci_hi, report.point);
  if (replications > 1) {
    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= static_cast<double>(replications);
    double ss = 0.0;
    for (double e : estimates) ss += (e - mean) * (e - mean);
    report.std_error = std::sqrt(ss / static_cast<double>(replications - 1));
  }
  return report;
}

namespace {

// Empirical plug-in of the x-space variance integral: the integrand is
// piecewise constant between order statistics, so the double integral is an
// exact double sum over ranks, collapsed to one pass by the rank-one kernel.
double plugin_variance(const Sample& s, GiniOrder n, double gc_shift) {
  const auto& x = s.values();
  const auto N = static_cast<double>(x.size());
  CompensatedSum diag, cross;
  double prefix = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double gap = x[i] - x[i - 1];
    if (gap == 0.0) continue;
    const double t = static_cast<double>(i) / N;
    const double u = static_cast<double>(x.size() - i) / N;
    const double a = (phi_weight(n, t, u) - gc_shift) * gap;
    diag.add(a * a * t * u);
    cross.add(a * u * prefix);
    prefix += a * t;
  }
  return diag.value() + 2.0 * cross.value();
}

}  // namespace

EstimateReport plugin_asymptotic_report(const Sample& s, GiniOrder n, EstimandTarget target,
                                        double level, WeightScheme scheme) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("plugin_asymptotic_report: level must lie in (0,1)");
  }
  EstimateReport report;
  report.point = estimate_target(s, n, target, scheme);
  report.scheme = scheme;
  report.ci_level = level;
  report.method = "plugin-asymptotic";
  double sigma2;
  if (target == EstimandTarget::GD) {
    sigma2 = plugin_variance(s, n, 0.0);
  } else {
    const double m = s.mean();
    sigma2 = plugin_variance(s, n, report.point) / (m * m);
  }
  report.std_error = std::sqrt(std::max(sigma2, 0.0) / static_cast<double>(s.size()));
  const double z = normal_quantile(0.5 * (1.0 + level));
  report.ci_lo = report.point - z * report.std_error;
  report.ci_hi = report.point + z * report.std_error;
  return report;
}

SimulationSummary simulate_sampling_distribution(const ParametricDistribution& dist, GiniOrder n,
                                                 std::size_t sample_size,
                                                 std::size_t replications, std::uint64_t seed,
                                                 EstimandTarget target, int threads) {
  if (sample_size < 2) throw std::domain_error("simulate: sample_size must be at least 2");
  if (replications < 2) throw std::domain_error("simulate: needs at least two replications");
  if (threads < 1) threads = 1;

  SimulationSummary summary;
  summary.replications = replications;
  const QuantileFunction q(dist);
  summary.predicted_mean =
      target == EstimandTarget::GD ? gd_n(q, n) : gc_n(q, n);
  const double sigma2 = target == EstimandTarget::GD ? asymptotic_variance_gd(dist, n)
                                                     : asymptotic_variance_gc(dist, n);
  summary.predicted_variance_over_n = sigma2 / static_cast<double>(sample_size);

  std::vector<double> estimates(replications);
  const auto worker = [&](std::size_t begin, std::size_t end, std::exception_ptr& error) {
    try {
      std::vector<double> draws(sample_size);
      for (std::size_t r = begin; r < end; ++r) {
        SplitMix64 stream = replication_stream(seed, r);
        for (double& d : draws) {
          const double u = stream.next_uniform();
          d = dist.quantile_from_tails(u, 1.0 - u);
        }
        std::sort(draws.begin(), draws.end());
        const Sample s = Sample::from_sorted(draws);
        estimates[r] = estimate_target(s, n, target, WeightScheme::PaperWeights);
      }
    } catch (...) {
      error = std::current_exception();
    }
  };

  if (threads == 1) {
    std::exception_ptr error;
    worker(0, replications, error);
    if (error) std::rethrow_exception(error);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    const std::size_t chunk = (replications + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const std::size_t begin = std::min(replications, chunk * static_cast<std::size_t>(w));
      const std::size_t end = std::min(replications, begin + chunk);
      pool.emplace_back(worker, begin, end, std::ref(errors[static_cast<std::size_t>(w)]));
    }
    for (auto& th : pool) th.join();
    for (const auto& error : errors) {
      if (error) std::rethrow_exception(error);
    }
  }

  CompensatedSum mean_acc;
  for (double e : estimates) mean_acc.add(e);
  summary.estimate_mean = mean_acc.value() / static_cast<double>(replications);
  CompensatedSum var_acc;
  for (double e : estimates) {
    const double d = e - summary.estimate_mean;
    var_acc.add(d * d);
  }
  summary.estimate_variance = var_acc.value() / static_cast<double>(replications - 1);

  // KS distance of the standardized estimates against the standard normal.
  const double scale = std::sqrt(summary.predicted_variance_over_n);
  std::vector<double> z(estimates);
  std::sort(z.begin(), z.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double cdf = normal_cdf((z[i] - summary.predicted_mean) / scale);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(z.size());
    const double lo = static_cast<double>(i) / static_cast<double>(z.size());
    ks = std::max(ks, std::max(std::fabs(cdf - hi), std::fabs(cdf - lo)));
  }
  summary.ks_distance = ks;
  return summary;
}

}  // namespace ginin

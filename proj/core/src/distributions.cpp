#include "ginin/distributions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ginin/rng.hpp"
#include "ginin/special_functions.hpp"

namespace ginin {

namespace {

std::string format_name(const char* family, std::initializer_list<double> params) {
  std::ostringstream os;
  os << family << '(';
  bool first = true;
  for (double p : params) {
    if (!first) os << ',';
    os << p;
    first = false;
  }
  os << ')';
  return os.str();
}

}  // namespace

ParametricDistribution::ParametricDistribution(Family family, std::string name, double p0,
                                               double p1, double p2)
    : family_(family), name_(std::move(name)), params_{p0, p1, p2} {}

ParametricDistribution ParametricDistribution::bernoulli(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("bernoulli: p must lie in (0,1)");
  return {Family::Bernoulli, format_name("Bernoulli", {p}), p, 0.0, 0.0};
}

ParametricDistribution ParametricDistribution::two_point(double x, double y, double p_at_y) {
  if (!(x < y)) throw std::domain_error("two_point: requires x < y");
  if (!(p_at_y > 0.0 && p_at_y < 1.0)) throw std::domain_error("two_point: p must lie in (0,1)");
  return {Family::TwoPoint, format_name("TwoPoint", {x, y, p_at_y}), x, y, p_at_y};
}

ParametricDistribution ParametricDistribution::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta: shape parameters must be positive");
  return {Family::Beta, format_name("Beta", {a, b}), a, b, 0.0};
}

ParametricDistribution ParametricDistribution::log_normal(double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("log_normal: sigma must be positive");
  if (!std::isfinite(mu)) throw std::domain_error("log_normal: mu must be finite");
  return {Family::LogNormal, format_name("LogNormal", {mu, sigma}), mu, sigma, 0.0};
}

ParametricDistribution ParametricDistribution::exponential(double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("exponential: rate must be positive");
  return {Family::Exponential, format_name("Exponential", {lambda}), lambda, 0.0, 0.0};
}

ParametricDistribution ParametricDistribution::pareto(double alpha, double x_m) {
  if (!(alpha > 0.0)) throw std::domain_error("pareto: alpha must be positive");
  if (!(x_m > 0.0)) throw std::domain_error("pareto: x_m must be positive");
  return {Family::Pareto, format_name("Pareto", {alpha, x_m}), alpha, x_m, 0.0};
}

double ParametricDistribution::quantile(double t) const {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("quantile: t must lie in (0,1)");
  return quantile_from_tails(t, 1.0 - t);
}

double ParametricDistribution::quantile_from_tails(double t, double u) const {
  switch (family_) {
    case Family::Bernoulli:
      // Left quantile: 0 while F(0) = 1-p >= t, i.e. while u >= p.
      return u >= params_[0] ? 0.0 : 1.0;
    case Family::TwoPoint:
      return u >= params_[2] ? params_[0] : params_[1];
    case Family::Beta:
      if (t <= 0.5) return incomplete_beta_inverse(params_[0], params_[1], t);
      return 1.0 - incomplete_beta_inverse(params_[1], params_[0], u);
    case Family::LogNormal: {
      const double z = t <= 0.5 ? normal_quantile(t) : -normal_quantile(u);
      return std::exp(params_[0] + params_[1] * z);
    }
    case Family::Exponential:
      return -std::log(u) / params_[0];
    case Family::Pareto:
      return params_[1] * std::exp(-std::log(u) / params_[0]);
  }
  throw std::logic_error("quantile_from_tails: unknown family");
}

double ParametricDistribution::cdf(double x) const {
  switch (family_) {
    case Family::Bernoulli:
      if (x < 0.0) return 0.0;
      return x < 1.0 ? 1.0 - params_[0] : 1.0;
    case Family::TwoPoint:
      if (x < params_[0]) return 0.0;
      return x < params_[1] ? 1.0 - params_[2] : 1.0;
    case Family::Beta:
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return incomplete_beta(params_[0], params_[1], x);
    case Family::LogNormal:
      if (x <= 0.0) return 0.0;
      return normal_cdf((std::log(x) - params_[0]) / params_[1]);
    case Family::Exponential:
      if (x <= 0.0) return 0.0;
      return -std::expm1(-params_[0] * x);
    case Family::Pareto:
      if (x <= params_[1]) return 0.0;
      return 1.0 - std::exp(params_[0] * std::log(params_[1] / x));
  }
  throw std::logic_error("cdf: unknown family");
}

double ParametricDistribution::survival(double x) const {
  switch (family_) {
    case Family::Bernoulli:
      if (x < 0.0) return 1.0;
      return x < 1.0 ? params_[0] : 0.0;
    case Family::TwoPoint:
      if (x < params_[0]) return 1.0;
      return x < params_[1] ? params_[2] : 0.0;
    case Family::Beta:
      if (x <= 0.0) return 1.0;
      if (x >= 1.0) return 0.0;
      return incomplete_beta(params_[1], params_[0], 1.0 - x);
    case Family::LogNormal:
      if (x <= 0.0) return 1.0;
      return normal_cdf(-(std::log(x) - params_[0]) / params_[1]);
    case Family::Exponential:
      if (x <= 0.0) return 1.0;
      return std::exp(-params_[0] * x);
    case Family::Pareto:
      if (x <= params_[1]) return 1.0;
      return std::exp(params_[0] * std::log(params_[1] / x));
  }
  throw std::logic_error("survival: unknown family");
}

double ParametricDistribution::density(double x) const {
  switch (family_) {
    case Family::Bernoulli:
    case Family::TwoPoint:
      throw std::domain_error("density: not defined for a discrete family");
    case Family::Beta: {
      if (x <= 0.0 || x >= 1.0) return 0.0;
      const double a = params_[0], b = params_[1];
      return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) -
                      (log_gamma(a) + log_gamma(b) - log_gamma(a + b)));
    }
    case Family::LogNormal: {
      if (x <= 0.0) return 0.0;
      const double z = (std::log(x) - params_[0]) / params_[1];
      return std::exp(-0.5 * z * z) / (x * params_[1] * 2.5066282746310005024);
    }
    case Family::Exponential:
      if (x < 0.0) return 0.0;
      return params_[0] * std::exp(-params_[0] * x);
    case Family::Pareto: {
      if (x < params_[1]) return 0.0;
      const double alpha = params_[0], xm = params_[1];
      return alpha / x * std::exp(alpha * std::log(xm / x));
    }
  }
  throw std::logic_error("density: unknown family");
}

bool ParametricDistribution::is_discrete() const {
  return family_ == Family::Bernoulli || family_ == Family::TwoPoint;
}

double ParametricDistribution::mean() const {
  switch (family_) {
    case Family::Bernoulli:
      return params_[0];
    case Family::TwoPoint:
      return params_[0] + params_[2] * (params_[1] - params_[0]);
    case Family::Beta:
      return params_[0] / (params_[0] + params_[1]);
    case Family::LogNormal:
      return std::exp(params_[0] + 0.5 * params_[1] * params_[1]);
    case Family::Exponential:
      return 1.0 / params_[0];
    case Family::Pareto:
      if (params_[0] <= 1.0) throw std::domain_error("mean: Pareto with alpha <= 1 has no mean");
      return params_[0] * params_[1] / (params_[0] - 1.0);
  }
  throw std::logic_error("mean: unknown family");
}

double beta_integer_first(int n, double c) {
  if (n < 1) throw std::domain_error("beta_integer_first: n must be >= 1");
  if (!(c > 0.0)) throw std::domain_error("beta_integer_first: c must be positive");
  // B(n,c) = Gamma(n)Gamma(c)/Gamma(n+c) = (1/c) prod_{j=1}^{n-1} j/(c+j).
  double result = 1.0 / c;
  for (int j = 1; j < n; ++j) {
    result *= static_cast<double>(j) / (c + static_cast<double>(j));
  }
  return result;
}

std::optional<double> ParametricDistribution::closed_form_gd(GiniOrder order) const {
  const int n = order.value();
  switch (family_) {
    case Family::Bernoulli:
      return distortion_h(order, params_[0]);
    case Family::TwoPoint:
      return (params_[1] - params_[0]) * distortion_h(order, params_[2]);
    case Family::Exponential: {
      double harmonic = 0.0;
      for (int k = 1; k < n; ++k) harmonic += 1.0 / k;
      return harmonic / (n * params_[0]);
    }
    case Family::Pareto: {
      const double alpha = params_[0];
      if (alpha <= 1.0) {
        throw std::domain_error("closed_form_gd: Pareto with alpha <= 1 has infinite mean");
      }
      const double c = 1.0 - 1.0 / alpha;
      return params_[1] * (beta_integer_first(n, c) - 1.0 / (n - 1.0 / alpha));
    }
    case Family::Beta:
    case Family::LogNormal:
      return std::nullopt;
  }
  throw std::logic_error("closed_form_gd: unknown family");
}

std::optional<double> ParametricDistribution::closed_form_gc(GiniOrder order) const {
  const int n = order.value();
  switch (family_) {
    case Family::Bernoulli:
      // GC_n = GD_n / E[X]; the division by p is deliberate, the factored
      // "(1-p^{n-1}-(1-p)^{n-1})/n" form sometimes quoted does not equal it.
      return distortion_h(order, params_[0]) / params_[0];
    case Family::TwoPoint: {
      if (params_[0] < 0.0) {
        throw std::domain_error("closed_form_gc: requires nonnegative support");
      }
      const double m = mean();
      if (!(m > 0.0)) throw std::domain_error("closed_form_gc: requires positive mean");
      return (params_[1] - params_[0]) * distortion_h(order, params_[2]) / m;
    }
    case Family::Exponential: {
      double harmonic = 0.0;
      for (int k = 1; k < n; ++k) harmonic += 1.0 / k;
      return harmonic / n;
    }
    case Family::Pareto: {
      const double alpha = params_[0];
      if (alpha <= 1.0) {
        throw std::domain_error("closed_form_gc: Pareto with alpha <= 1 has infinite mean");
      }
      const double c = 1.0 - 1.0 / alpha;
      return (alpha - 1.0) / alpha * (beta_integer_first(n, c) - 1.0 / (n - 1.0 / alpha));
    }
    case Family::Beta:
    case Family::LogNormal:
      return std::nullopt;
  }
  throw std::logic_error("closed_form_gc: unknown family");
}

std::vector<double> ParametricDistribution::sample(std::size_t count, std::uint64_t seed) const {
  if (count == 0) throw std::domain_error("sample: count must be at least 1");
  std::vector<double> values(count);
  SplitMix64 stream(seed);
  for (double& v : values) {
    const double u = stream.next_uniform();
    v = quantile_from_tails(u, 1.0 - u);
  }
  return values;
}

}  // namespace ginin

#include "ginin/distortion.hpp"

#include <cmath>
#include <stdexcept>

namespace ginin {

GiniOrder::GiniOrder(int n) : n_(n) {
  if (n < 2) throw std::domain_error("GiniOrder: order must be at least 2");
}

double unit_pow(double x, double m) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (m == 1.0) return x;
  return std::exp(m * std::log(x));
}

double phi_weight(GiniOrder n, double t, double u) {
  const double m = n.value() - 1;
  return unit_pow(t, m) - unit_pow(u, m);
}

double phi_weight(GiniOrder n, double t) { return phi_weight(n, t, 1.0 - t); }

double phi_antiderivative(GiniOrder n, double t, double u) {
  const double m = n.value();
  return (unit_pow(t, m) + unit_pow(u, m)) / m;
}

double phi_antiderivative(GiniOrder n, double t) { return phi_antiderivative(n, t, 1.0 - t); }

double distortion_h(GiniOrder n, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("distortion_h: t must lie in [0,1]");
  if (t == 0.0 || t == 1.0) return 0.0;
  const double m = n.value();
  return (1.0 - unit_pow(t, m) - unit_pow(1.0 - t, m)) / m;
}

double distortion_h_derivative(GiniOrder n, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("distortion_h_derivative: t must lie in [0,1]");
  }
  const double m = n.value() - 1;
  return unit_pow(1.0 - t, m) - unit_pow(t, m);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double result = 1.0;
  for (int i = 1; i <= k; ++i) {
    result *= static_cast<double>(n - k + i);
    result /= static_cast<double>(i);
  }
  return result;
}

DistortionFunction::DistortionFunction(std::vector<double> power_coefficients)
    : coeffs_(std::move(power_coefficients)) {
  if (coeffs_.empty()) {
    throw std::domain_error("DistortionFunction: needs at least one coefficient");
  }
}

DistortionFunction::DistortionFunction(int canonical_n, std::vector<double> coeffs)
    : canonical_n_(canonical_n), coeffs_(std::move(coeffs)) {}

DistortionFunction DistortionFunction::canonical(GiniOrder order) {
  const int n = order.value();
  std::vector<double> c;
  if (n <= 40) {
    // h_n(t) = sum_{k=1}^{n} c_k t^k with c_k = (-1)^{k+1} C(n,k)/n for k < n
    // and c_n = ((-1)^{n+1} - 1)/n.
    c.resize(static_cast<std::size_t>(n));
    for (int k = 1; k < n; ++k) {
      const double sign = (k % 2 == 1) ? 1.0 : -1.0;
      c[static_cast<std::size_t>(k - 1)] = sign * binomial(n, k) / n;
    }
    c[static_cast<std::size_t>(n - 1)] = ((n % 2 == 1 ? 1.0 : -1.0) - 1.0) / n;
  }
  return DistortionFunction(n, std::move(c));
}

double DistortionFunction::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("DistortionFunction: t must lie in [0,1]");
  if (canonical_n_ != 0) return distortion_h(GiniOrder(canonical_n_), t);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = (acc + *it) * t;
  }
  return acc;
}

double DistortionFunction::derivative(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("DistortionFunction: t must lie in [0,1]");
  if (canonical_n_ != 0) return distortion_h_derivative(GiniOrder(canonical_n_), t);
  double acc = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 1;) {
    acc = acc * t + coeffs_[k] * static_cast<double>(k + 1);
  }
  return acc * t + coeffs_[0];
}

double DistortionFunction::weight_antiderivative(double t) const {
  if (canonical_n_ == 0) {
    throw std::domain_error(
        "DistortionFunction: weight antiderivative is defined for the canonical h_n only");
  }
  return phi_antiderivative(GiniOrder(canonical_n_), t);
}

int DistortionFunction::degree() const {
  if (canonical_n_ != 0) return canonical_n_;
  return static_cast<int>(coeffs_.size());
}

std::vector<double> hn_one_minus_t_coefficients(GiniOrder order) {
  const int n = order.value();
  std::vector<double> a(static_cast<std::size_t>(n), 0.0);
  for (int k = 1; k < n; ++k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    a[static_cast<std::size_t>(k - 1)] = sign * binomial(n, k) / n;
  }
  a[static_cast<std::size_t>(n - 1)] = ((n % 2 == 1 ? 1.0 : -1.0) - 1.0) / n;
  return a;
}

}  // namespace ginin

#pragma once

#include <cmath>

namespace ginin {

// Neumaier compensated accumulator. Keeps long sums accurate to ~1 ulp of the
// result, which the 1e-12 identity checks on step quantiles rely on.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace ginin

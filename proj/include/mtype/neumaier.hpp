#pragma once

#include <cmath>

namespace mtype {

// Compensated (Neumaier) accumulator. Long sums of many small probabilities lose
// mass to rounding with a plain running sum; the correction term keeps the result
// accurate to within a few ulp regardless of term count or ordering.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
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

}  // namespace mtype

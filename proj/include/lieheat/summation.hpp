#pragma once

#include <cmath>

namespace lieheat {

/// Neumaier's variant of compensated summation. Terms must be fed in a fixed
/// order for results to be reproducible.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar x) {
    const Scalar t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(Scalar x) {
    add(x);
    return *this;
  }
  Scalar value() const { return sum_ + comp_; }

 private:
  Scalar sum_{0};
  Scalar comp_{0};
};

}  // namespace lieheat

#pragma once

#include "augustin/common.hpp"

namespace augustin {

// Compensated (Kahan) scalar accumulator. Callers feed terms in a fixed
// ascending index order, which makes every reduction bit-reproducible for a
// given input regardless of build flags that do not change FP semantics.
template <class Scalar = double>
class KahanSum {
 public:
  void add(Scalar value) {
    const Scalar y = value - compensation_;
    const Scalar t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }

  Scalar value() const { return sum_; }

 private:
  Scalar sum_{0};
  Scalar compensation_{0};
};

// Compensated sum of a dense Eigen expression, ascending index order.
template <class Derived>
typename Derived::Scalar kahan_total(const Eigen::DenseBase<Derived>& values) {
  KahanSum<typename Derived::Scalar> acc;
  for (Index i = 0; i < values.size(); ++i) acc.add(values.derived().coeff(i));
  return acc.value();
}

// Per-coordinate compensated accumulator for sums of N-vectors. The vector
// additions are vectorized; the compensation per coordinate follows the same
// recurrence as KahanSum. Scratch is preallocated, add() does not allocate.
class KahanArray {
 public:
  explicit KahanArray(Index size)
      : sum_(ArrayXd::Zero(size)),
        compensation_(ArrayXd::Zero(size)),
        y_(size),
        t_(size) {}

  void reset() {
    sum_.setZero();
    compensation_.setZero();
  }

  template <class Derived>
  void add(const Eigen::ArrayBase<Derived>& value) {
    y_ = value.derived() - compensation_;
    t_ = sum_ + y_;
    compensation_ = (t_ - sum_) - y_;
    sum_.swap(t_);
  }

  const ArrayXd& value() const { return sum_; }
  Index size() const { return sum_.size(); }

 private:
  ArrayXd sum_;
  ArrayXd compensation_;
  ArrayXd y_;
  ArrayXd t_;
};

}  // namespace augustin

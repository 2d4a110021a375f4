#pragma once

#include <cmath>

namespace infolab {

/// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays
/// accurate when an addend is larger in magnitude than the running sum.
///
/// Infinite addends bypass compensation so that +inf/-inf propagate as a
/// plain sum would (inf - inf in the correction term would otherwise yield
/// NaN).
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;

  void add(double value) noexcept {
    if (!std::isfinite(value) || !std::isfinite(sum_)) {
      sum_ += value;
      return;
    }
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) noexcept {
    add(value);
    return *this;
  }

  double value() const noexcept {
    return std::isfinite(sum_) ? sum_ + compensation_ : sum_;
  }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace infolab

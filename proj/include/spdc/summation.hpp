#pragma once

#include <cmath>
#include <complex>

namespace spdc {

/// Neumaier's improved Kahan summation. The running compensation captures the
/// low-order bits lost by each addition, including the case where the new term
/// is larger than the running sum. Must not be compiled with -ffast-math.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double value) {
    add(value);
    return *this;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> value) {
    re_.add(value.real());
    im_.add(value.imag());
  }
  void add(double re, double im) {
    re_.add(re);
    im_.add(im);
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace spdc

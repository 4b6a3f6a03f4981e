#pragma once

#include <complex>

namespace sqcert {

// Compensated summation; keeps absolute error per term near machine epsilon
// even for long exponential sums.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class KahanComplexSum {
 public:
  void add(const std::complex<double>& z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

}  // namespace sqcert

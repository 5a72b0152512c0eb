#pragma once

#include <complex>

namespace skewlab {

// Neumaier-compensated accumulator. Used for every long floating sum whose
// value feeds a tolerance or a frozen regression.
template <class T>
struct Kahan;

template <>
struct Kahan<double> {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

template <>
struct Kahan<std::complex<double>> {
  Kahan<double> re, im;

  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

using KahanD = Kahan<double>;
using KahanC = Kahan<std::complex<double>>;

}  // namespace skewlab

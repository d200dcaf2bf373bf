#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace turan::detail {

// m * 2^e with max(|re m|, |im m|) in [0.5, 1), or m == 0.
struct ScaledComplex {
  std::complex<double> m{1.0, 0.0};
  std::int64_t e = 0;

  static ScaledComplex from(std::complex<double> z, std::int64_t e2 = 0) {
    ScaledComplex s{z, e2};
    s.normalize();
    return s;
  }

  void normalize() {
    const double a = std::max(std::abs(m.real()), std::abs(m.imag()));
    if (a == 0.0) {
      m = 0.0;
      e = 0;
      return;
    }
    int k = 0;
    std::frexp(a, &k);
    m = std::complex<double>(std::ldexp(m.real(), -k), std::ldexp(m.imag(), -k));
    e += k;
  }

  bool is_zero() const { return m == std::complex<double>(0.0, 0.0); }

  double log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(m)) + static_cast<double>(e) * std::numbers::ln2;
  }

  double arg() const { return std::arg(m); }

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
    ScaledComplex r{a.m * b.m, a.e + b.e};
    r.normalize();
    return r;
  }

  friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const bool a_big = a.e >= b.e;
    const ScaledComplex& big = a_big ? a : b;
    const ScaledComplex& small = a_big ? b : a;
    const std::int64_t shift = big.e - small.e;
    std::complex<double> sm = 0.0;
    if (shift < 1100) {
      const int s = static_cast<int>(-shift);
      sm = std::complex<double>(std::ldexp(small.m.real(), s), std::ldexp(small.m.imag(), s));
    }
    ScaledComplex r{big.m + sm, big.e};
    r.normalize();
    return r;
  }
};

}  // namespace turan::detail

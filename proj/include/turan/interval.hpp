#pragma once

// Closed real intervals with outward rounding.
//
// The four basic operations and sqrt use error-free transformations (TwoSum
// and FMA residuals) to learn on which side of the rounded result the exact
// value lies; exact results are not widened. exp and log widen by a few ulps.
// Assumes round-to-nearest and no flush-to-zero.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "turan/errors.hpp"

namespace turan {

namespace iv {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double down(double x) { return std::nextafter(x, -kInf); }
inline double up(double x) { return std::nextafter(x, kInf); }

// Results this small may have lost bits to underflow; widen unconditionally.
inline bool tiny(double x) { return x != 0.0 && std::abs(x) < 0x1p-960; }

// Overflow of a finite operation: the exact value is finite, so clamp the
// bound that would otherwise be infinite on the wrong side.
inline double clamp_dn(double r) { return r == kInf ? std::numeric_limits<double>::max() : r; }
inline double clamp_up(double r) { return r == -kInf ? std::numeric_limits<double>::lowest() : r; }

inline double add_dn(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(a) || !std::isfinite(b)) return s;
  if (!std::isfinite(s)) return clamp_dn(s);
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return e < 0.0 || tiny(s) ? down(s) : s;
}
inline double add_up(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(a) || !std::isfinite(b)) return s;
  if (!std::isfinite(s)) return clamp_up(s);
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return e > 0.0 || tiny(s) ? up(s) : s;
}

inline double mul_dn(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (!std::isfinite(a) || !std::isfinite(b)) return p;
  if (!std::isfinite(p)) return clamp_dn(p);
  const double e = std::fma(a, b, -p);
  return e < 0.0 || tiny(p) || p == 0.0 ? down(p) : p;
}
inline double mul_up(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (!std::isfinite(a) || !std::isfinite(b)) return p;
  if (!std::isfinite(p)) return clamp_up(p);
  const double e = std::fma(a, b, -p);
  return e > 0.0 || tiny(p) || p == 0.0 ? up(p) : p;
}

// The exact quotient is q + r / b with r = a - q b computed exactly by FMA.
inline double div_dn(double a, double b) {
  if (a == 0.0) return 0.0;
  const double q = a / b;
  if (!std::isfinite(a) || !std::isfinite(b)) return q;
  if (!std::isfinite(q)) return clamp_dn(q);
  if (tiny(q) || q == 0.0) return down(q);
  const double r = std::fma(-q, b, a);
  return r != 0.0 && (r > 0.0) != (b > 0.0) ? down(q) : q;
}
inline double div_up(double a, double b) {
  if (a == 0.0) return 0.0;
  const double q = a / b;
  if (!std::isfinite(a) || !std::isfinite(b)) return q;
  if (!std::isfinite(q)) return clamp_up(q);
  if (tiny(q) || q == 0.0) return up(q);
  const double r = std::fma(-q, b, a);
  return r != 0.0 && (r > 0.0) == (b > 0.0) ? up(q) : q;
}

inline double sqrt_dn(double x) {
  if (x <= 0.0) return 0.0;
  const double r = std::sqrt(x);
  const double e = std::fma(-r, r, x);  // x - r^2
  return e < 0.0 || tiny(x) ? down(r) : r;
}
inline double sqrt_up(double x) {
  if (x <= 0.0) return 0.0;
  const double r = std::sqrt(x);
  const double e = std::fma(-r, r, x);
  return e > 0.0 || tiny(x) ? up(r) : r;
}

}  // namespace iv

class Interval {
 public:
  Interval() = default;
  Interval(double x) : lo_(x), hi_(x) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(x)) throw InvalidArgument("Interval: NaN");
  }
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) throw InvalidArgument("Interval: lo > hi or NaN");
  }

  /// Enclosure of the rational p / q.
  static Interval ratio(double p, double q) { return Interval(iv::div_dn(p, q), iv::div_up(p, q)); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return 0.5 * lo_ + 0.5 * hi_; }
  double width() const { return hi_ - lo_; }
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool is_point() const { return lo_ == hi_; }

  friend Interval operator+(Interval a, Interval b) {
    return {iv::add_dn(a.lo_, b.lo_), iv::add_up(a.hi_, b.hi_)};
  }
  friend Interval operator-(Interval a, Interval b) {
    return {iv::add_dn(a.lo_, -b.hi_), iv::add_up(a.hi_, -b.lo_)};
  }
  friend Interval operator-(Interval a) { return {-a.hi_, -a.lo_}; }
  friend Interval operator*(Interval a, Interval b) {
    const double lo = std::min({iv::mul_dn(a.lo_, b.lo_), iv::mul_dn(a.lo_, b.hi_),
                                iv::mul_dn(a.hi_, b.lo_), iv::mul_dn(a.hi_, b.hi_)});
    const double hi = std::max({iv::mul_up(a.lo_, b.lo_), iv::mul_up(a.lo_, b.hi_),
                                iv::mul_up(a.hi_, b.lo_), iv::mul_up(a.hi_, b.hi_)});
    return {lo, hi};
  }
  friend Interval operator/(Interval a, Interval b) {
    if (b.lo_ <= 0.0 && b.hi_ >= 0.0) throw InvalidArgument("Interval: division by an interval containing 0");
    const double lo = std::min({iv::div_dn(a.lo_, b.lo_), iv::div_dn(a.lo_, b.hi_),
                                iv::div_dn(a.hi_, b.lo_), iv::div_dn(a.hi_, b.hi_)});
    const double hi = std::max({iv::div_up(a.lo_, b.lo_), iv::div_up(a.lo_, b.hi_),
                                iv::div_up(a.hi_, b.lo_), iv::div_up(a.hi_, b.hi_)});
    return {lo, hi};
  }
  Interval& operator+=(Interval b) { return *this = *this + b; }
  Interval& operator-=(Interval b) { return *this = *this - b; }
  Interval& operator*=(Interval b) { return *this = *this * b; }

  friend Interval sqr(Interval a) {
    if (a.lo_ >= 0.0) return {iv::mul_dn(a.lo_, a.lo_), iv::mul_up(a.hi_, a.hi_)};
    if (a.hi_ <= 0.0) return {iv::mul_dn(a.hi_, a.hi_), iv::mul_up(a.lo_, a.lo_)};
    const double m = std::max(-a.lo_, a.hi_);
    return {0.0, iv::mul_up(m, m)};
  }
  friend Interval sqrt(Interval a) {
    if (a.lo_ < 0.0) throw InvalidArgument("Interval: sqrt of a negative value");
    return {iv::sqrt_dn(a.lo_), iv::sqrt_up(a.hi_)};
  }
  friend Interval exp(Interval a) {
    auto lo = [](double x) {
      if (x == 0.0) return 1.0;
      const double e = std::exp(x);
      return std::max(0.0, iv::down(iv::down(iv::down(e))));
    };
    auto hi = [](double x) {
      if (x == 0.0) return 1.0;
      if (x == -iv::kInf) return 0.0;
      return iv::up(iv::up(iv::up(std::exp(x))));
    };
    return {a.lo_ == -iv::kInf ? 0.0 : lo(a.lo_), hi(a.hi_)};
  }
  friend Interval log(Interval a) {
    if (a.lo_ < 0.0) throw InvalidArgument("Interval: log of a negative value");
    auto lo = [](double x) {
      if (x == 0.0) return -iv::kInf;
      if (x == 1.0) return 0.0;
      return iv::down(iv::down(iv::down(std::log(x))));
    };
    auto hi = [](double x) {
      if (x == 0.0) return -iv::kInf;
      if (x == 1.0) return 0.0;
      return iv::up(iv::up(iv::up(std::log(x))));
    };
    return {lo(a.lo_), hi(a.hi_)};
  }
  /// a^k for a >= 0 and real k > 0, as exp(k log a).
  friend Interval pow(Interval a, double k) {
    if (a.lo_ < 0.0) throw InvalidArgument("Interval: pow of a negative base");
    if (!(k >= 0.0)) throw InvalidArgument("Interval: pow needs a nonnegative exponent");
    if (k == 0.0) return Interval(1.0);
    if (k == 1.0) return a;
    auto side = [k](double x, bool upper) {
      if (x == 0.0) return 0.0;
      if (x == 1.0) return 1.0;
      const Interval l = log(Interval(x));
      const Interval e = exp(Interval(k) * l);
      return upper ? e.hi_ : e.lo_;
    };
    return {side(a.lo_, false), side(a.hi_, true)};
  }
  friend Interval max(Interval a, Interval b) {
    return {std::max(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
  }
  friend Interval min(Interval a, Interval b) {
    return {std::min(a.lo_, b.lo_), std::min(a.hi_, b.hi_)};
  }
  friend Interval hull(Interval a, Interval b) {
    return {std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
  }

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Value and gradient enclosures over a box, for monotonicity tests.
template <int N>
struct IntervalDual {
  Interval v;
  std::array<Interval, N> d{};

  IntervalDual() = default;
  IntervalDual(double c) : v(c) {}  // NOLINT(google-explicit-constructor)
  IntervalDual(Interval c) : v(c) {}  // NOLINT(google-explicit-constructor)

  static IntervalDual variable(Interval x, int i) {
    IntervalDual r(x);
    r.d[i] = Interval(1.0);
    return r;
  }

  friend IntervalDual operator+(const IntervalDual& a, const IntervalDual& b) {
    IntervalDual r(a.v + b.v);
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
    return r;
  }
  friend IntervalDual operator-(const IntervalDual& a, const IntervalDual& b) {
    IntervalDual r(a.v - b.v);
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
    return r;
  }
  friend IntervalDual operator-(const IntervalDual& a) {
    IntervalDual r(-a.v);
    for (int i = 0; i < N; ++i) r.d[i] = -a.d[i];
    return r;
  }
  friend IntervalDual operator*(const IntervalDual& a, const IntervalDual& b) {
    IntervalDual r(a.v * b.v);
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
  }
  friend IntervalDual operator/(const IntervalDual& a, const IntervalDual& b) {
    IntervalDual r(a.v / b.v);
    const Interval b2 = sqr(b.v);
    for (int i = 0; i < N; ++i) r.d[i] = (a.d[i] * b.v - a.v * b.d[i]) / b2;
    return r;
  }
  friend IntervalDual sqr(const IntervalDual& a) {
    IntervalDual r(sqr(a.v));
    for (int i = 0; i < N; ++i) r.d[i] = Interval(2.0) * a.v * a.d[i];
    return r;
  }
  friend IntervalDual sqrt(const IntervalDual& a) {
    IntervalDual r(sqrt(a.v));
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] / (Interval(2.0) * r.v);
    return r;
  }
  friend IntervalDual exp(const IntervalDual& a) {
    IntervalDual r(exp(a.v));
    for (int i = 0; i < N; ++i) r.d[i] = r.v * a.d[i];
    return r;
  }
  friend IntervalDual log(const IntervalDual& a) {
    IntervalDual r(log(a.v));
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] / a.v;
    return r;
  }
  friend IntervalDual pow(const IntervalDual& a, double k) {
    IntervalDual r(pow(a.v, k));
    const Interval dk = k == 1.0 ? Interval(1.0) : Interval(k) * pow(a.v, k - 1.0);
    for (int i = 0; i < N; ++i) r.d[i] = dk * a.d[i];
    return r;
  }
};

std::string to_string(const Interval& x);

}  // namespace turan

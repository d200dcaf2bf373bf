#pragma once

// Independent reference computations for the tests: plain std::complex
// arithmetic, dense sampling and closed forms. Nothing here calls the
// library's evaluation or certification paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;

inline C poly(const std::vector<C>& roots, C z, C lead = 1.0) {
  C p = lead;
  for (C r : roots) p *= z - r;
  return p;
}

inline C dpoly(const std::vector<C>& roots, C z, C lead = 1.0) {
  C s = 0.0;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    C t = lead;
    for (std::size_t k = 0; k < roots.size(); ++k)
      if (k != j) t *= z - roots[k];
    s += t;
  }
  return s;
}

/// log|P(z)| summed term by term.
inline double log_abs_poly(const std::vector<C>& roots, C z) {
  double s = 0.0;
  for (C r : roots) s += std::log(std::abs(z - r));
  return s;
}

/// Points on the unit circle, segment or polygon boundary at a fixed count.
inline std::vector<C> circle(C c, double r, int count) {
  std::vector<C> out;
  for (int i = 0; i < count; ++i) out.push_back(c + std::polar(r, 2.0 * std::numbers::pi * i / count));
  return out;
}

inline std::vector<C> segment(C p, C q, int count) {
  std::vector<C> out;
  for (int i = 0; i <= count; ++i) out.push_back(p + (q - p) * (static_cast<double>(i) / count));
  return out;
}

inline std::vector<C> polygon(const std::vector<C>& v, int per_edge) {
  std::vector<C> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const C a = v[i], b = v[(i + 1) % v.size()];
    for (int k = 0; k < per_edge; ++k) out.push_back(a + (b - a) * (static_cast<double>(k) / per_edge));
  }
  return out;
}

/// max over samples of |P| and |P'|: lower bounds on both sup-norms.
inline std::pair<double, double> sampled_norms(const std::vector<C>& roots, const std::vector<C>& pts) {
  double p = 0.0, d = 0.0;
  for (C z : pts) {
    p = std::max(p, std::abs(poly(roots, z)));
    d = std::max(d, std::abs(dpoly(roots, z)));
  }
  return {p, d};
}

/// Width of a convex polygon by brute force over edge directions and all
/// vertices (O(V^2)).
inline double polygon_width(const std::vector<C>& v) {
  double best = INFINITY;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const C e = v[(i + 1) % v.size()] - v[i];
    const C nrm = C(-e.imag(), e.real()) / std::abs(e);
    double lo = INFINITY, hi = -INFINITY;
    for (C p : v) {
      const double s = p.real() * nrm.real() + p.imag() * nrm.imag();
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    best = std::min(best, hi - lo);
  }
  return best;
}

inline double polygon_diameter(const std::vector<C>& v) {
  double d = 0.0;
  for (C a : v)
    for (C b : v) d = std::max(d, std::abs(a - b));
  return d;
}

/// max over x in [-1, 1] of 2m|x|(1 - x^2)^(m-1), attained at x^2 = 1/(2m-1).
inline double segment_pm_ratio(int m) {
  const double mm = m;
  return 2.0 * mm / std::sqrt(2.0 * mm - 1.0) * std::pow((2.0 * mm - 2.0) / (2.0 * mm - 1.0), mm - 1.0);
}

}  // namespace oracle

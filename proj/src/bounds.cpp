#include "turan/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "turan/errors.hpp"

namespace turan {

BoundReport bound_report(double d, double w, int n) {
  if (n < 1) throw InvalidArgument("bound_report: n must be >= 1");
  if (!(d > 0.0) || !std::isfinite(d)) throw InvalidArgument("bound_report: diameter must be positive");
  if (!(w >= 0.0) || w > d * (1.0 + 1e-12)) throw InvalidArgument("bound_report: width must lie in [0, d]");
  const double nn = static_cast<double>(n);
  const double rn = std::sqrt(nn);
  BoundReport r;
  r.n = n;
  r.d = d;
  r.w = w;
  r.s = w / d;
  r.lp_lower = rn / (20.0 * d);
  const double big = std::max(w * nn / (d * d), rn / d);
  r.two_sided_lower = kC1 * big;
  r.two_sided_upper = kC2 * big;
  r.sharpness_threshold = w > 0.0 ? d * d / ((560.0 * w) * (560.0 * w)) : INFINITY;
  r.sharpness_regime = nn < r.sharpness_threshold;
  r.corollary2 = w <= d / rn;
  r.gamma = exponent_class(std::min(r.s, 1.0), n);
  if (w > 0.0) {
    r.revesz_applicable = true;
    r.revesz_lower = 0.0003 * w * nn / (d * d);
    const double x = d / (16.0 * w);
    r.n0 = std::max(1.0, 2.0 * x * x * std::log(x));
    r.revesz_upper_applicable = nn > r.n0;
    if (r.revesz_upper_applicable) r.revesz_upper = 600.0 * w * nn / (d * d);
    r.corollary1_applicable = true;
    r.corollary1_threshold = d * d / (w * w);
    r.corollary1_active = nn > r.corollary1_threshold;
    if (r.corollary1_active) r.corollary1_upper = kC2 * w * nn / (d * d);
  } else {
    r.corollary1_threshold = INFINITY;
  }
  return r;
}

BoundReport bound_report(const ConvexSet& k, int n) {
  return bound_report(diameter(k), min_width(k), n);
}

SharpnessReport sharpness_check(double d, double w, int n) {
  if (!(w > 0.0)) throw InvalidArgument("sharpness_check: width must be positive");
  if (!(d > 0.0)) throw InvalidArgument("sharpness_check: diameter must be positive");
  if (n < 1) throw InvalidArgument("sharpness_check: n must be >= 1");
  const double nn = static_cast<double>(n);
  SharpnessReport r;
  r.threshold = d * d / ((560.0 * w) * (560.0 * w));
  r.regime = nn < r.threshold;
  r.at_threshold = nn == r.threshold;
  r.upper = kC2 * w * nn / (d * d);
  r.lower = std::sqrt(nn) / (20.0 * d);
  r.strict = r.upper < r.lower;
  return r;
}

double exponent_class(double s, int n) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("exponent_class: s must lie in [0, 1]");
  if (n < 1) throw InvalidArgument("exponent_class: n must be >= 1");
  if (n == 1) return 0.5;
  const double nn = static_cast<double>(n);
  if (s <= 1.0 / std::sqrt(nn)) return 0.5;
  return std::clamp(1.0 + std::log(s) / std::log(nn), 0.5, 1.0);
}

double diamond_width(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidArgument("diamond_width: eps must lie in [0, 1]");
  return 2.0 * eps / std::sqrt(1.0 + eps * eps);
}

}  // namespace turan

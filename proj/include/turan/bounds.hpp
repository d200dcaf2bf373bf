#pragma once

#include "turan/geometry.hpp"

namespace turan {

/// Constants of the two-sided estimate c1 max{wn/d^2, sqrt(n)/d} <= M_n <= c2 max{...}.
inline constexpr double kC1 = 0.0003;
inline constexpr double kC2 = 28.0;

/// Every published bound on M_n(K) for one (n, K). Lengths are in the units of
/// K; bounds have units of inverse length. Fields that need w > 0 carry an
/// applicability flag and are 0 when the flag is off.
struct BoundReport {
  int n = 0;
  double d = 0.0;
  double w = 0.0;
  double s = 0.0;  // w / d

  double lp_lower = 0.0;  // sqrt(n) / (20 d)

  bool revesz_applicable = false;  // w > 0
  double revesz_lower = 0.0;       // 0.0003 w n / d^2
  double n0 = 0.0;                 // max{1, 2 (d/16w)^2 ln(d/16w)}
  bool revesz_upper_applicable = false;  // w > 0 and n > n0
  double revesz_upper = 0.0;       // 600 w n / d^2

  double two_sided_lower = 0.0;  // c1 max{wn/d^2, sqrt(n)/d}
  double two_sided_upper = 0.0;  // c2 max{wn/d^2, sqrt(n)/d}

  bool corollary1_applicable = false;  // w > 0
  double corollary1_threshold = 0.0;   // d^2 / w^2
  bool corollary1_active = false;      // n > d^2 / w^2
  double corollary1_upper = 0.0;       // 28 w n / d^2

  double sharpness_threshold = 0.0;  // d^2 / (560 w)^2
  bool sharpness_regime = false;     // n < d^2 / (560 w)^2

  bool corollary2 = false;  // w <= d / sqrt(n)
  double gamma = 0.5;       // exponent_class(s, n)
};

/// Throws InvalidArgument for n < 1 or d <= 0 or w outside [0, d].
BoundReport bound_report(double d, double w, int n);
BoundReport bound_report(const ConvexSet& k, int n);

struct SharpnessReport {
  double threshold = 0.0;   // d^2 / (560 w)^2
  bool regime = false;      // n < threshold
  bool at_threshold = false;
  double upper = 0.0;       // 28 w n / d^2
  double lower = 0.0;       // sqrt(n) / (20 d)
  bool strict = false;      // upper < lower
};

/// Throws InvalidArgument for w <= 0.
SharpnessReport sharpness_check(double d, double w, int n);

/// gamma with max{s n, sqrt(n)} = n^gamma: 1/2 when s <= n^(-1/2), else
/// 1 + log s / log n, clamped to [1/2, 1].
double exponent_class(double s, int n);

/// 2 eps / sqrt(1 + eps^2). Throws InvalidArgument outside [0, 1].
double diamond_width(double eps);

}  // namespace turan

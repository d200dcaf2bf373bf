#pragma once

#include <string_view>

#include "turan/geometry.hpp"
#include "turan/polyroot.hpp"

namespace turan {

enum class WitnessCase { SmallNOrWide, Even, Odd };

std::string_view to_string(WitnessCase c);

struct WitnessChoice {
  WitnessCase case_tag;
  int m = 0;  // 0 for SmallNOrWide
  RootPoly polynomial;
};

/// (z - 1)^n. Throws InvalidArgument for n < 1.
RootPoly q_poly(int n);
/// (z^2 - 1)^m, degree 2m. Throws InvalidArgument for m < 1.
RootPoly p_poly(int m);
/// (z - 1)(z^2 - 1)^m, degree 2m + 1. Throws InvalidArgument for m < 1.
RootPoly big_p_poly(int m);

/// Width at or above which (z - 1)^n is used for every n.
inline constexpr double kWideThreshold = 3.0 / 7.0;
/// Largest degree for which (z - 1)^n is always used.
inline constexpr int kSmallDegree = 199;

/// Witness polynomial for degree n on a normalized set (d = 2, +-1 in K1):
/// (z - 1)^n when n <= 199 or w(K1) >= 3/7, otherwise (z^2 - 1)^(n/2) for
/// even n and (z - 1)(z^2 - 1)^((n-1)/2) for odd n.
/// Throws PreconditionError when K1 is not normalized.
WitnessChoice witness_for(int n, const ConvexSet& k1);

/// 7 max{w n, 2 sqrt(n)}: the upper bound on the normalized scale.
double normalized_upper_bound(double w, int n);

/// 28 max{w n / d^2, sqrt(n) / d}.
double upper_bound(double d, double w, int n);

struct WitnessRatio {
  WitnessChoice choice;
  AffineMap map;        // normalization map t with K1 = t(K)
  MarkovRatio on_k1;    // certified ratio on K1
  double lower = 0.0;   // certified ratio of choice.polynomial o t on K
  double upper = 0.0;
  double bound = 0.0;   // upper_bound(d(K), w(K), n)
};

/// Normalizes K, picks the witness on K1 and pulls the certified ratio back
/// to K through |alpha|.
WitnessRatio witness_ratio(const ConvexSet& k, int n, const NormOptions& opt = {});

}  // namespace turan

#include "turan/constructions.hpp"

#include <cmath>
#include <string>

#include "turan/errors.hpp"

namespace turan {

std::string_view to_string(WitnessCase c) {
  switch (c) {
    case WitnessCase::SmallNOrWide: return "SMALL_N_OR_WIDE";
    case WitnessCase::Even: return "EVEN";
    case WitnessCase::Odd: return "ODD";
  }
  return "?";
}

RootPoly q_poly(int n) {
  if (n < 1) throw InvalidArgument("q_poly: n must be >= 1");
  return RootPoly(1.0, std::vector<Complex>(static_cast<std::size_t>(n), Complex(1.0, 0.0)));
}

RootPoly p_poly(int m) {
  if (m < 1) throw InvalidArgument("p_poly: m must be >= 1");
  std::vector<Complex> roots(static_cast<std::size_t>(m), Complex(1.0, 0.0));
  roots.resize(2 * static_cast<std::size_t>(m), Complex(-1.0, 0.0));
  return RootPoly(1.0, std::move(roots));
}

RootPoly big_p_poly(int m) {
  if (m < 1) throw InvalidArgument("big_p_poly: m must be >= 1");
  std::vector<Complex> roots(static_cast<std::size_t>(m) + 1, Complex(1.0, 0.0));
  roots.resize(2 * static_cast<std::size_t>(m) + 1, Complex(-1.0, 0.0));
  return RootPoly(1.0, std::move(roots));
}

WitnessChoice witness_for(int n, const ConvexSet& k1) {
  if (n < 1) throw InvalidArgument("witness_for: n must be >= 1");
  if (!is_normalized(k1)) throw PreconditionError("witness_for: set is not normalized");
  const double w = min_width(k1);
  if (n <= kSmallDegree || w >= kWideThreshold)
    return WitnessChoice{WitnessCase::SmallNOrWide, 0, q_poly(n)};
  if (n % 2 == 0) return WitnessChoice{WitnessCase::Even, n / 2, p_poly(n / 2)};
  return WitnessChoice{WitnessCase::Odd, (n - 1) / 2, big_p_poly((n - 1) / 2)};
}

double normalized_upper_bound(double w, int n) {
  return 7.0 * std::max(w * n, 2.0 * std::sqrt(static_cast<double>(n)));
}

double upper_bound(double d, double w, int n) {
  return 28.0 * std::max(w * n / (d * d), std::sqrt(static_cast<double>(n)) / d);
}

WitnessRatio witness_ratio(const ConvexSet& k, int n, const NormOptions& opt) {
  const Normalization nz = normalize(k);
  WitnessChoice choice = witness_for(n, nz.set);
  MarkovRatio r = markov_ratio(choice.polynomial, nz.set, opt);
  const double s = nz.map.scale();
  // One rounding in each product, pushed outward.
  const double lower = std::nextafter(r.lower * s, 0.0);
  const double upper = std::nextafter(r.upper * s, INFINITY);
  return WitnessRatio{std::move(choice), nz.map, std::move(r), lower, upper,
                      upper_bound(diameter(k), min_width(k), n)};
}

}  // namespace turan

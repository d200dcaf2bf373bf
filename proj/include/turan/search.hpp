#pragma once

// Numerical upper estimates of M_n(K) = inf ||P'||_K / ||P||_K over
// polynomials of degree n with all roots in K.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "turan/geometry.hpp"
#include "turan/polyroot.hpp"

namespace turan {

struct MarkovEstimate {
  double value = 0.0;   // upper end of the certified ratio of `roots`
  double lower = 0.0;   // lower end of the same certificate
  std::vector<Complex> roots;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
  std::string method;   // "multistart" or "grid"
};

struct SearchOptions {
  int starts = 8;
  double search_tol = 1e-3;
  double final_tol = 1e-6;
  double min_step = 1e-6;  // relative to d(K) / 2
  bool parallel = true;
};

/// Multistart pattern search over root positions. Starts: all roots at one
/// diameter endpoint, at the other, split evenly between both, the
/// constructive witness, then seeded random configurations. Deterministic in (K, n, budget, seed, options).
/// Throws InvalidArgument for n < 1 or budget < 100.
MarkovEstimate estimate_mn(const ConvexSet& k, int n, std::size_t budget, std::uint64_t seed,
                           const SearchOptions& opt = {});

/// Exhaustive minimum of the certified ratio over sorted root tuples on the
/// lattice step * Z^2 intersected with K (for segment-like K, the points
/// p + j step (q - p)/|q - p|). Requires 1 <= n <= 3. Throws ResourceLimit
/// when the number of tuples exceeds `cap`.
MarkovEstimate brute_force_mn(const ConvexSet& k, int n, double step,
                              std::size_t cap = 50'000'000, double final_tol = 1e-6);

/// Minimum certified lower ratio over `count` random root configurations
/// drawn uniformly from K (rejection from the bounding box; uniform along
/// the segment for segment-like K).
double sample_ratio_floor(const ConvexSet& k, int n, std::size_t count, std::uint64_t seed,
                          const NormOptions& opt = {});

/// Uniform point of K, as used by the samplers above.
Complex random_point(const ConvexSet& k, std::mt19937_64& rng);

}  // namespace turan

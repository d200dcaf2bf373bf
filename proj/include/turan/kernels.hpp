#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2+FMA variant chosen at runtime.
// The variants agree to rounding; tests/test_kernels.cpp pins the tolerance.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>

namespace turan::kernels {

/// Structure-of-arrays view over complex numbers.
struct ComplexView {
  const double* re = nullptr;
  const double* im = nullptr;
  std::size_t size = 0;
};

/// Sums over all roots r_j for one evaluation point z:
///   prod (z - r_j) = (prod_re + i prod_im) * 2^prod_exp2
///   s1 = sum 1/(z - r_j),  s2 = sum 1/(z - r_j)^2
/// s1 and s2 are meaningless when min_dist2 == 0.
struct PointSums {
  double prod_re = 1.0;
  double prod_im = 0.0;
  std::int64_t prod_exp2 = 0;
  double s1_re = 0.0;
  double s1_im = 0.0;
  double s2_re = 0.0;
  double s2_im = 0.0;
  double min_dist2 = std::numeric_limits<double>::infinity();
};

/// Sums over all roots for the segment [a, b]:
///   prod max(|a - r_j|, |b - r_j|) = dmax_mant * 2^dmax_exp2
///   inv_dmax = sum 1/max(|a - r_j|, |b - r_j|)
///   inv_dmin2 = sum 1/dist(r_j, [a, b])^2   (+inf when a root lies on [a, b])
struct SegmentSums {
  double dmax_mant = 1.0;
  std::int64_t dmax_exp2 = 0;
  double inv_dmax = 0.0;
  double inv_dmin2 = 0.0;
};

/// Input of the brute-force sweep. For every sample z_i the caller supplies
/// the prefix product A_i = prod_{j<n} (z_i - r_j) and its derivative A'_i.
/// For each candidate last root c_k the sweep returns
///   max_i |A_i (z_i - c_k)|^2   and   max_i |A'_i (z_i - c_k) + A_i|^2.
struct SweepInput {
  ComplexView samples;
  ComplexView prefix;
  ComplexView prefix_derivative;
  ComplexView candidates;
};

using PointSumsFn = void (*)(ComplexView roots, double zr, double zi, PointSums& out);
using SegmentSumsFn = void (*)(ComplexView roots, double ar, double ai, double br, double bi,
                               SegmentSums& out);
using TupleSweepFn = void (*)(const SweepInput& in, std::size_t begin, std::size_t end,
                              double* max_p2, double* max_d2);

struct KernelTable {
  std::string_view name;
  PointSumsFn point_sums;
  SegmentSumsFn segment_sums;
  TupleSweepFn tuple_sweep;
};

const KernelTable& scalar_kernels();

/// nullptr when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels();

/// Kernels in use. Defaults to the best supported table; the environment
/// variable TURAN_KERNELS=scalar|avx2 overrides the choice at first use.
const KernelTable& active_kernels();

/// Selects the active table ("scalar", "avx2" or "auto"). Returns false when
/// the requested table is unavailable, leaving the selection unchanged.
bool select_kernels(std::string_view name);

}  // namespace turan::kernels

#pragma once

#include "turan/kernels.hpp"

namespace turan::kernels {

void point_sums_scalar(ComplexView roots, double zr, double zi, PointSums& out);
void segment_sums_scalar(ComplexView roots, double ar, double ai, double br, double bi,
                         SegmentSums& out);
void tuple_sweep_scalar(const SweepInput& in, std::size_t begin, std::size_t end,
                        double* max_p2, double* max_d2);

#if defined(TURAN_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace turan::kernels

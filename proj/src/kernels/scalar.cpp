#include <algorithm>
#include <cmath>

#include "kernels_internal.hpp"

namespace turan::kernels {

void point_sums_scalar(ComplexView roots, double zr, double zi, PointSums& out) {
  double pr = 1.0, pi = 0.0;
  std::int64_t e2 = 0;
  double s1r = 0.0, s1i = 0.0, s2r = 0.0, s2i = 0.0;
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < roots.size; ++j) {
    const double dr = zr - roots.re[j];
    const double di = zi - roots.im[j];
    const double nr = pr * dr - pi * di;
    const double ni = pr * di + pi * dr;
    const double m = std::max(std::abs(nr), std::abs(ni));
    if (m != 0.0) {
      int e = 0;
      std::frexp(m, &e);
      pr = std::ldexp(nr, -e);
      pi = std::ldexp(ni, -e);
      e2 += e;
    } else {
      pr = 0.0;
      pi = 0.0;
    }
    const double q = dr * dr + di * di;
    dmin = std::min(dmin, q);
    const double inv = 1.0 / q;
    s1r += dr * inv;
    s1i -= di * inv;
    const double inv2 = inv * inv;
    s2r += (dr * dr - di * di) * inv2;
    s2i -= 2.0 * dr * di * inv2;
  }
  out = PointSums{pr, pi, e2, s1r, s1i, s2r, s2i, dmin};
}

void segment_sums_scalar(ComplexView roots, double ar, double ai, double br, double bi,
                         SegmentSums& out) {
  const double ux = br - ar, uy = bi - ai;
  const double len2 = ux * ux + uy * uy;
  double mant = 1.0;
  std::int64_t e2 = 0;
  double inv_dmax = 0.0, inv_dmin2 = 0.0;
  for (std::size_t j = 0; j < roots.size; ++j) {
    const double xa = roots.re[j] - ar, ya = roots.im[j] - ai;
    const double xb = roots.re[j] - br, yb = roots.im[j] - bi;
    const double dmax = std::sqrt(std::max(xa * xa + ya * ya, xb * xb + yb * yb));
    int e = 0;
    mant = std::frexp(mant * dmax, &e);
    e2 += e;
    inv_dmax += 1.0 / dmax;
    double t = len2 > 0.0 ? (xa * ux + ya * uy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double px = xa - t * ux, py = ya - t * uy;
    inv_dmin2 += 1.0 / (px * px + py * py);
  }
  out = SegmentSums{mant, e2, inv_dmax, inv_dmin2};
}

void tuple_sweep_scalar(const SweepInput& in, std::size_t begin, std::size_t end,
                        double* max_p2, double* max_d2) {
  const std::size_t m = in.samples.size;
  for (std::size_t k = begin; k < end; ++k) {
    const double cr = in.candidates.re[k], ci = in.candidates.im[k];
    double bp = 0.0, bd = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double br = in.samples.re[i] - cr;
      const double bi = in.samples.im[i] - ci;
      const double ar = in.prefix.re[i], ai = in.prefix.im[i];
      const double pr = ar * br - ai * bi;
      const double pi = ar * bi + ai * br;
      const double dr = in.prefix_derivative.re[i] * br - in.prefix_derivative.im[i] * bi + ar;
      const double di = in.prefix_derivative.re[i] * bi + in.prefix_derivative.im[i] * br + ai;
      bp = std::max(bp, pr * pr + pi * pi);
      bd = std::max(bd, dr * dr + di * di);
    }
    max_p2[k] = bp;
    max_d2[k] = bd;
  }
}

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &point_sums_scalar, &segment_sums_scalar,
                                 &tuple_sweep_scalar};
  return table;
}

}  // namespace turan::kernels

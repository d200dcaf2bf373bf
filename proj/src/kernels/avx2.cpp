// Compiled with -mavx2 -mfma. Only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_internal.hpp"

namespace turan::kernels {

namespace {

// Factors outside [2^-500, 2^500] would push the exponent bookkeeping below
// out of the normal range; such inputs are handed to the scalar kernel.
constexpr double kTinyQ = 0x1p-1000;
constexpr double kHugeQ = 0x1p+1000;

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

// Splits m (> 0, normal) as f * 2^e with f in [0.5, 1); returns 2^-e in *scale.
// Lanes with m == 0 get scale 1 and e 0.
inline __m256i frexp_scale(__m256d m, __m256d* scale) {
  const __m256i bits = _mm256_castpd_si256(m);
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  const __m256i live = _mm256_cmpgt_epi64(biased, _mm256_setzero_si256());
  const __m256i e = _mm256_sub_epi64(biased, _mm256_set1_epi64x(1022));
  const __m256i sbits =
      _mm256_slli_epi64(_mm256_sub_epi64(_mm256_set1_epi64x(2045), biased), 52);
  *scale = _mm256_blendv_pd(_mm256_set1_pd(1.0), _mm256_castsi256_pd(sbits),
                            _mm256_castsi256_pd(live));
  return _mm256_and_si256(e, live);
}

inline double hsum(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[1]) + (t[2] + t[3]);
}

inline double hmin(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return std::min(std::min(t[0], t[1]), std::min(t[2], t[3]));
}

inline double hmax(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return std::max(std::max(t[0], t[1]), std::max(t[2], t[3]));
}

// Multiplies a (mantissa, exponent) complex accumulator by another and
// renormalizes, scalar side.
inline void mul_scaled(double& pr, double& pi, std::int64_t& e2, double qr, double qi,
                       std::int64_t qe) {
  const double nr = pr * qr - pi * qi;
  const double ni = pr * qi + pi * qr;
  const double m = std::max(std::abs(nr), std::abs(ni));
  if (m == 0.0) {
    pr = pi = 0.0;
    e2 = 0;
    return;
  }
  int e = 0;
  std::frexp(m, &e);
  pr = std::ldexp(nr, -e);
  pi = std::ldexp(ni, -e);
  e2 += qe + e;
}

void point_sums_avx2(ComplexView roots, double zr, double zi, PointSums& out) {
  const std::size_t n = roots.size;
  const std::size_t nv = n - n % 4;
  __m256d pr = _mm256_set1_pd(1.0), pi = _mm256_setzero_pd();
  __m256i e2 = _mm256_setzero_si256();
  __m256d s1r = _mm256_setzero_pd(), s1i = _mm256_setzero_pd();
  __m256d s2r = _mm256_setzero_pd(), s2i = _mm256_setzero_pd();
  __m256d qmin = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d qmax = _mm256_setzero_pd();
  const __m256d vzr = _mm256_set1_pd(zr), vzi = _mm256_set1_pd(zi);
  const __m256d two = _mm256_set1_pd(2.0), one = _mm256_set1_pd(1.0);
  for (std::size_t j = 0; j < nv; j += 4) {
    const __m256d dr = _mm256_sub_pd(vzr, _mm256_loadu_pd(roots.re + j));
    const __m256d di = _mm256_sub_pd(vzi, _mm256_loadu_pd(roots.im + j));
    const __m256d nr = _mm256_fmsub_pd(pr, dr, _mm256_mul_pd(pi, di));
    const __m256d ni = _mm256_fmadd_pd(pr, di, _mm256_mul_pd(pi, dr));
    __m256d scale;
    const __m256i e = frexp_scale(_mm256_max_pd(vabs(nr), vabs(ni)), &scale);
    pr = _mm256_mul_pd(nr, scale);
    pi = _mm256_mul_pd(ni, scale);
    e2 = _mm256_add_epi64(e2, e);
    const __m256d q = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
    qmin = _mm256_min_pd(qmin, q);
    qmax = _mm256_max_pd(qmax, q);
    const __m256d inv = _mm256_div_pd(one, q);
    s1r = _mm256_fmadd_pd(dr, inv, s1r);
    s1i = _mm256_fnmadd_pd(di, inv, s1i);
    const __m256d inv2 = _mm256_mul_pd(inv, inv);
    s2r = _mm256_fmadd_pd(_mm256_fmsub_pd(dr, dr, _mm256_mul_pd(di, di)), inv2, s2r);
    s2i = _mm256_fnmadd_pd(_mm256_mul_pd(two, _mm256_mul_pd(dr, di)), inv2, s2i);
  }
  const double lo = hmin(qmin), hi = hmax(qmax);
  if ((lo < kTinyQ && lo != 0.0) || hi > kHugeQ) {
    point_sums_scalar(roots, zr, zi, out);
    return;
  }
  alignas(32) double lr[4], li[4];
  alignas(32) std::int64_t le[4];
  _mm256_store_pd(lr, pr);
  _mm256_store_pd(li, pi);
  _mm256_store_si256(reinterpret_cast<__m256i*>(le), e2);
  double accr = 1.0, acci = 0.0;
  std::int64_t acce = 0;
  for (int l = 0; l < 4; ++l) mul_scaled(accr, acci, acce, lr[l], li[l], le[l]);

  PointSums tail;
  point_sums_scalar(ComplexView{roots.re + nv, roots.im + nv, n - nv}, zr, zi, tail);
  mul_scaled(accr, acci, acce, tail.prod_re, tail.prod_im, tail.prod_exp2);
  out.prod_re = accr;
  out.prod_im = acci;
  out.prod_exp2 = acce;
  out.s1_re = hsum(s1r) + tail.s1_re;
  out.s1_im = hsum(s1i) + tail.s1_im;
  out.s2_re = hsum(s2r) + tail.s2_re;
  out.s2_im = hsum(s2i) + tail.s2_im;
  out.min_dist2 = std::min(lo, tail.min_dist2);
}

void segment_sums_avx2(ComplexView roots, double ar, double ai, double br, double bi,
                       SegmentSums& out) {
  const std::size_t n = roots.size;
  const std::size_t nv = n - n % 4;
  const double ux = br - ar, uy = bi - ai;
  const double len2 = ux * ux + uy * uy;
  const __m256d var = _mm256_set1_pd(ar), vai = _mm256_set1_pd(ai);
  const __m256d vbr = _mm256_set1_pd(br), vbi = _mm256_set1_pd(bi);
  const __m256d vux = _mm256_set1_pd(ux), vuy = _mm256_set1_pd(uy);
  const __m256d vinvlen2 = _mm256_set1_pd(len2 > 0.0 ? 1.0 / len2 : 0.0);
  const __m256d zero = _mm256_setzero_pd(), one = _mm256_set1_pd(1.0);
  __m256d mant = one;
  __m256i e2 = _mm256_setzero_si256();
  __m256d inv_dmax = zero, inv_dmin2 = zero;
  __m256d qmin = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d qmax = zero;
  for (std::size_t j = 0; j < nv; j += 4) {
    const __m256d rr = _mm256_loadu_pd(roots.re + j), ri = _mm256_loadu_pd(roots.im + j);
    const __m256d xa = _mm256_sub_pd(rr, var), ya = _mm256_sub_pd(ri, vai);
    const __m256d xb = _mm256_sub_pd(rr, vbr), yb = _mm256_sub_pd(ri, vbi);
    const __m256d da = _mm256_fmadd_pd(xa, xa, _mm256_mul_pd(ya, ya));
    const __m256d db = _mm256_fmadd_pd(xb, xb, _mm256_mul_pd(yb, yb));
    const __m256d q = _mm256_max_pd(da, db);
    qmin = _mm256_min_pd(qmin, q);
    qmax = _mm256_max_pd(qmax, q);
    const __m256d dmax = _mm256_sqrt_pd(q);
    __m256d scale;
    const __m256d prod = _mm256_mul_pd(mant, dmax);
    const __m256i e = frexp_scale(prod, &scale);
    mant = _mm256_mul_pd(prod, scale);
    e2 = _mm256_add_epi64(e2, e);
    inv_dmax = _mm256_add_pd(inv_dmax, _mm256_div_pd(one, dmax));
    __m256d t = _mm256_mul_pd(_mm256_fmadd_pd(xa, vux, _mm256_mul_pd(ya, vuy)), vinvlen2);
    t = _mm256_min_pd(_mm256_max_pd(t, zero), one);
    const __m256d px = _mm256_fnmadd_pd(t, vux, xa);
    const __m256d py = _mm256_fnmadd_pd(t, vuy, ya);
    inv_dmin2 = _mm256_add_pd(
        inv_dmin2, _mm256_div_pd(one, _mm256_fmadd_pd(px, px, _mm256_mul_pd(py, py))));
  }
  const double lo = hmin(qmin), hi = hmax(qmax);
  if (lo < kTinyQ || hi > kHugeQ) {
    segment_sums_scalar(roots, ar, ai, br, bi, out);
    return;
  }
  alignas(32) double lm[4];
  alignas(32) std::int64_t le[4];
  _mm256_store_pd(lm, mant);
  _mm256_store_si256(reinterpret_cast<__m256i*>(le), e2);
  double acc = 1.0;
  std::int64_t acce = 0;
  for (int l = 0; l < 4; ++l) {
    int e = 0;
    acc = std::frexp(acc * lm[l], &e);
    acce += le[l] + e;
  }
  SegmentSums tail;
  segment_sums_scalar(ComplexView{roots.re + nv, roots.im + nv, n - nv}, ar, ai, br, bi, tail);
  int e = 0;
  acc = std::frexp(acc * tail.dmax_mant, &e);
  out.dmax_mant = acc;
  out.dmax_exp2 = acce + tail.dmax_exp2 + e;
  out.inv_dmax = hsum(inv_dmax) + tail.inv_dmax;
  out.inv_dmin2 = hsum(inv_dmin2) + tail.inv_dmin2;
}

void tuple_sweep_avx2(const SweepInput& in, std::size_t begin, std::size_t end,
                      double* max_p2, double* max_d2) {
  const std::size_t m = in.samples.size;
  const std::size_t mv = m - m % 4;
  for (std::size_t k = begin; k < end; ++k) {
    const double cr = in.candidates.re[k], ci = in.candidates.im[k];
    const __m256d vcr = _mm256_set1_pd(cr), vci = _mm256_set1_pd(ci);
    __m256d bp = _mm256_setzero_pd(), bd = _mm256_setzero_pd();
    for (std::size_t i = 0; i < mv; i += 4) {
      const __m256d br = _mm256_sub_pd(_mm256_loadu_pd(in.samples.re + i), vcr);
      const __m256d bi = _mm256_sub_pd(_mm256_loadu_pd(in.samples.im + i), vci);
      const __m256d ar = _mm256_loadu_pd(in.prefix.re + i);
      const __m256d ai = _mm256_loadu_pd(in.prefix.im + i);
      const __m256d dr0 = _mm256_loadu_pd(in.prefix_derivative.re + i);
      const __m256d di0 = _mm256_loadu_pd(in.prefix_derivative.im + i);
      const __m256d pr = _mm256_fmsub_pd(ar, br, _mm256_mul_pd(ai, bi));
      const __m256d pi = _mm256_fmadd_pd(ar, bi, _mm256_mul_pd(ai, br));
      const __m256d dr = _mm256_add_pd(_mm256_fmsub_pd(dr0, br, _mm256_mul_pd(di0, bi)), ar);
      const __m256d di = _mm256_add_pd(_mm256_fmadd_pd(dr0, bi, _mm256_mul_pd(di0, br)), ai);
      bp = _mm256_max_pd(bp, _mm256_fmadd_pd(pr, pr, _mm256_mul_pd(pi, pi)));
      bd = _mm256_max_pd(bd, _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di)));
    }
    double p = hmax(bp), d = hmax(bd);
    for (std::size_t i = mv; i < m; ++i) {
      const double br = in.samples.re[i] - cr, bi = in.samples.im[i] - ci;
      const double ar = in.prefix.re[i], ai = in.prefix.im[i];
      const double pr = ar * br - ai * bi, pi = ar * bi + ai * br;
      const double dr = in.prefix_derivative.re[i] * br - in.prefix_derivative.im[i] * bi + ar;
      const double di = in.prefix_derivative.re[i] * bi + in.prefix_derivative.im[i] * br + ai;
      p = std::max(p, pr * pr + pi * pi);
      d = std::max(d, dr * dr + di * di);
    }
    max_p2[k] = p;
    max_d2[k] = d;
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", &point_sums_avx2, &segment_sums_avx2,
                                 &tuple_sweep_avx2};
  return table;
}

}  // namespace turan::kernels

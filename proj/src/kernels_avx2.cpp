#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "srl/kernels.hpp"

// 4-wide sincos: Cody-Waite reduction by pi/2 (3-term split) followed by
// fdlibm-style minimax polynomials on [-pi/4, pi/4] and quadrant selection.
// Valid for |x| < 2^28; larger arguments take the scalar path.

namespace srl::kernels::avx2 {

bool available() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

constexpr double kTwoOverPi = 6.36619772367581382433e-01;
// pi/2 = kPio2Hi + kPio2Lo; the hi part has 33 significand bits so that
// k*kPio2Hi is exact (even without FMA) for |k| < 2^20
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Lo = 6.07710050650619224932e-11;
constexpr double kMaxArg = 1.0e6;

inline __m256d poly_sin(__m256d r) {
  const __m256d S1 = _mm256_set1_pd(-1.66666666666666324348e-01);
  const __m256d S2 = _mm256_set1_pd(8.33333333332248946124e-03);
  const __m256d S3 = _mm256_set1_pd(-1.98412698298579493134e-04);
  const __m256d S4 = _mm256_set1_pd(2.75573137070700676789e-06);
  const __m256d S5 = _mm256_set1_pd(-2.50507602534068634195e-08);
  const __m256d S6 = _mm256_set1_pd(1.58969099521155010221e-10);
  const __m256d z = _mm256_mul_pd(r, r);
  __m256d p = _mm256_fmadd_pd(S6, z, S5);
  p = _mm256_fmadd_pd(p, z, S4);
  p = _mm256_fmadd_pd(p, z, S3);
  p = _mm256_fmadd_pd(p, z, S2);
  p = _mm256_fmadd_pd(p, z, S1);
  // r + r*z*p
  return _mm256_fmadd_pd(_mm256_mul_pd(r, z), p, r);
}

inline __m256d poly_cos(__m256d r) {
  const __m256d C1 = _mm256_set1_pd(4.16666666666666019037e-02);
  const __m256d C2 = _mm256_set1_pd(-1.38888888888741095749e-03);
  const __m256d C3 = _mm256_set1_pd(2.48015872894767294178e-05);
  const __m256d C4 = _mm256_set1_pd(-2.75573143513906633035e-07);
  const __m256d C5 = _mm256_set1_pd(2.08757232129817482790e-09);
  const __m256d C6 = _mm256_set1_pd(-1.13596475577881948265e-11);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d z = _mm256_mul_pd(r, r);
  __m256d p = _mm256_fmadd_pd(C6, z, C5);
  p = _mm256_fmadd_pd(p, z, C4);
  p = _mm256_fmadd_pd(p, z, C3);
  p = _mm256_fmadd_pd(p, z, C2);
  p = _mm256_fmadd_pd(p, z, C1);
  // 1 - z/2 + z*z*p
  const __m256d zz = _mm256_mul_pd(z, z);
  return _mm256_fmadd_pd(zz, p, _mm256_fnmadd_pd(z, half, one));
}

// Computes sin and cos of 4 doubles. Requires |x| < 2^28 in every lane.
inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
  const __m256d k = _mm256_round_pd(
      _mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kPio2Hi), x);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kPio2Lo), r);

  const __m256d sr = poly_sin(r);
  const __m256d cr = poly_cos(r);

  // quadrant n = k mod 4 decides the swap/sign pattern:
  //   sin(x) = [sr, cr, -sr, -cr][n],  cos(x) = [cr, -sr, -cr, sr][n]
  const __m128i ki = _mm256_cvtpd_epi32(k);
  const __m256i kq = _mm256_cvtepi32_epi64(ki);
  const __m256i bit0 = _mm256_and_si256(kq, _mm256_set1_epi64x(1));
  const __m256i bit1 = _mm256_and_si256(kq, _mm256_set1_epi64x(2));
  const __m256d swap =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit0, _mm256_set1_epi64x(1)));
  const __m256d flip =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit1, _mm256_set1_epi64x(2)));

  __m256d s = _mm256_blendv_pd(sr, cr, swap);
  __m256d c = _mm256_blendv_pd(cr, sr, swap);
  const __m256d sign = _mm256_set1_pd(-0.0);
  s = _mm256_xor_pd(s, _mm256_and_pd(flip, sign));
  // cos is negated when exactly one of {swap, flip} is set
  c = _mm256_xor_pd(c, _mm256_and_pd(_mm256_xor_pd(flip, swap), sign));
  s_out = s;
  c_out = c;
}

inline bool small_args(__m256d x) {
  const __m256d ax = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
  const __m256d big = _mm256_cmp_pd(ax, _mm256_set1_pd(kMaxArg), _CMP_GE_OQ);
  return _mm256_movemask_pd(big) == 0;
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

}  // namespace

Accum cexp_accum(const double* phase, const double* cre, const double* cim,
                 std::size_t n) {
  __m256d acc_re0 = _mm256_setzero_pd(), acc_im0 = _mm256_setzero_pd();
  __m256d acc_re1 = _mm256_setzero_pd(), acc_im1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    const __m256d p0 = _mm256_loadu_pd(phase + j);
    const __m256d p1 = _mm256_loadu_pd(phase + j + 4);
    if (!small_args(p0) || !small_args(p1)) break;
    __m256d s0, c0, s1, c1;
    sincos4(p0, s0, c0);
    sincos4(p1, s1, c1);
    const __m256d a0 = _mm256_loadu_pd(cre + j);
    const __m256d b0 = _mm256_loadu_pd(cim + j);
    const __m256d a1 = _mm256_loadu_pd(cre + j + 4);
    const __m256d b1 = _mm256_loadu_pd(cim + j + 4);
    acc_re0 = _mm256_fmadd_pd(a0, c0, acc_re0);
    acc_re0 = _mm256_fnmadd_pd(b0, s0, acc_re0);
    acc_im0 = _mm256_fmadd_pd(a0, s0, acc_im0);
    acc_im0 = _mm256_fmadd_pd(b0, c0, acc_im0);
    acc_re1 = _mm256_fmadd_pd(a1, c1, acc_re1);
    acc_re1 = _mm256_fnmadd_pd(b1, s1, acc_re1);
    acc_im1 = _mm256_fmadd_pd(a1, s1, acc_im1);
    acc_im1 = _mm256_fmadd_pd(b1, c1, acc_im1);
  }
  Accum a;
  a.re = hsum(_mm256_add_pd(acc_re0, acc_re1));
  a.im = hsum(_mm256_add_pd(acc_im0, acc_im1));
  const Accum rest = scalar::cexp_accum(phase + j, cre + j, cim + j, n - j);
  a.re += rest.re;
  a.im += rest.im;
  return a;
}

void cexp_apply(const double* phase, double* re, double* im, std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d p = _mm256_loadu_pd(phase + j);
    if (!small_args(p)) break;
    __m256d s, c;
    sincos4(p, s, c);
    const __m256d r = _mm256_loadu_pd(re + j);
    const __m256d i = _mm256_loadu_pd(im + j);
    _mm256_storeu_pd(re + j, _mm256_fnmadd_pd(i, s, _mm256_mul_pd(r, c)));
    _mm256_storeu_pd(im + j, _mm256_fmadd_pd(r, s, _mm256_mul_pd(i, c)));
  }
  scalar::cexp_apply(phase + j, re + j, im + j, n - j);
}

void sincos_array(const double* phase, double* out_c, double* out_s,
                  std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d p = _mm256_loadu_pd(phase + j);
    if (!small_args(p)) break;
    __m256d s, c;
    sincos4(p, s, c);
    _mm256_storeu_pd(out_c + j, c);
    _mm256_storeu_pd(out_s + j, s);
  }
  scalar::sincos_array(phase + j, out_c + j, out_s + j, n - j);
}

double abs_pow_accum(const double* re, const double* im, const double* w,
                     std::size_t n, double q) {
  if (q != 4.0 && q != 6.0 && q != 2.0)
    return scalar::abs_pow_accum(re, im, w, n, q);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d r = _mm256_loadu_pd(re + j);
    const __m256d i = _mm256_loadu_pd(im + j);
    const __m256d wv = _mm256_loadu_pd(w + j);
    const __m256d m = _mm256_fmadd_pd(r, r, _mm256_mul_pd(i, i));
    __m256d t;
    if (q == 2.0)
      t = m;
    else if (q == 4.0)
      t = _mm256_mul_pd(m, m);
    else
      t = _mm256_mul_pd(_mm256_mul_pd(m, m), m);
    acc = _mm256_fmadd_pd(wv, t, acc);
  }
  double out = hsum(acc);
  out += scalar::abs_pow_accum(re + j, im + j, w + j, n - j, q);
  return out;
}

}  // namespace srl::kernels::avx2

#endif  // x86-64

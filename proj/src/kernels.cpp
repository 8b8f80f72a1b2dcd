#include "srl/kernels.hpp"

namespace srl::kernels {

namespace {

int g_forced = 0;

bool use_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  static const bool hw = avx2::available();
  if (g_forced == 1) return false;
  if (g_forced == 2) return hw;
  return hw;
#else
  return false;
#endif
}

}  // namespace

void force_backend(int which) { g_forced = which; }

const std::string& backend_name() {
  static const std::string scalar_name = "scalar";
  static const std::string avx2_name = "avx2";
  return use_avx2() ? avx2_name : scalar_name;
}

Accum cexp_accum(const double* phase, const double* cre, const double* cim,
                 std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return avx2::cexp_accum(phase, cre, cim, n);
#endif
  return scalar::cexp_accum(phase, cre, cim, n);
}

void cexp_apply(const double* phase, double* re, double* im, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return avx2::cexp_apply(phase, re, im, n);
#endif
  scalar::cexp_apply(phase, re, im, n);
}

void sincos_array(const double* phase, double* out_c, double* out_s,
                  std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return avx2::sincos_array(phase, out_c, out_s, n);
#endif
  scalar::sincos_array(phase, out_c, out_s, n);
}

double abs_pow_accum(const double* re, const double* im, const double* w,
                     std::size_t n, double q) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return avx2::abs_pow_accum(re, im, w, n, q);
#endif
  return scalar::abs_pow_accum(re, im, w, n, q);
}

}  // namespace srl::kernels

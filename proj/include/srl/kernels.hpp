#pragma once

// Data-parallel inner kernels used by the oscillatory-sum evaluators.
//
// Every kernel exists in a scalar reference form and (on x86-64) an AVX2+FMA
// form. The active variant is chosen once at startup from CPUID; the two are
// equivalence-tested against each other to ~1e-13 relative. Reductions inside
// a single kernel call run in a fixed order, so results are reproducible
// run-to-run for a given build/machine.

#include <complex>
#include <cstddef>
#include <string>

namespace srl::kernels {

struct Accum {
  double re = 0.0;
  double im = 0.0;
  std::complex<double> to_complex() const { return {re, im}; }
};

// sum_j (cre[j] + i*cim[j]) * exp(i*phase[j])
Accum cexp_accum(const double* phase, const double* cre, const double* cim,
                 std::size_t n);

// (re[j] + i*im[j]) *= exp(i*phase[j]) in place
void cexp_apply(const double* phase, double* re, double* im, std::size_t n);

// out_c[j] = cos(phase[j]), out_s[j] = sin(phase[j])
void sincos_array(const double* phase, double* out_c, double* out_s,
                  std::size_t n);

// sum_j w[j] * (re[j]^2 + im[j]^2)^(q/2).  Fast paths for q = 4 and q = 6.
double abs_pow_accum(const double* re, const double* im, const double* w,
                     std::size_t n, double q);

// Name of the active backend ("avx2" or "scalar").
const std::string& backend_name();

// Force a backend for testing: 0 = auto, 1 = scalar, 2 = avx2.
void force_backend(int which);

// Scalar reference implementations (always available; used by the
// equivalence tests).
namespace scalar {
Accum cexp_accum(const double* phase, const double* cre, const double* cim,
                 std::size_t n);
void cexp_apply(const double* phase, double* re, double* im, std::size_t n);
void sincos_array(const double* phase, double* out_c, double* out_s,
                  std::size_t n);
double abs_pow_accum(const double* re, const double* im, const double* w,
                     std::size_t n, double q);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
bool available();
Accum cexp_accum(const double* phase, const double* cre, const double* cim,
                 std::size_t n);
void cexp_apply(const double* phase, double* re, double* im, std::size_t n);
void sincos_array(const double* phase, double* out_c, double* out_s,
                  std::size_t n);
double abs_pow_accum(const double* re, const double* im, const double* w,
                     std::size_t n, double q);
}  // namespace avx2
#endif

}  // namespace srl::kernels

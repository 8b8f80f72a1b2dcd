#include "srl/kernels.hpp"

#include <cmath>

namespace srl::kernels::scalar {

Accum cexp_accum(const double* phase, const double* cre, const double* cim,
                 std::size_t n) {
  Accum a;
  for (std::size_t j = 0; j < n; ++j) {
    const double c = std::cos(phase[j]);
    const double s = std::sin(phase[j]);
    a.re += cre[j] * c - cim[j] * s;
    a.im += cre[j] * s + cim[j] * c;
  }
  return a;
}

void cexp_apply(const double* phase, double* re, double* im, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double c = std::cos(phase[j]);
    const double s = std::sin(phase[j]);
    const double r = re[j], i = im[j];
    re[j] = r * c - i * s;
    im[j] = r * s + i * c;
  }
}

void sincos_array(const double* phase, double* out_c, double* out_s,
                  std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    out_c[j] = std::cos(phase[j]);
    out_s[j] = std::sin(phase[j]);
  }
}

double abs_pow_accum(const double* re, const double* im, const double* w,
                     std::size_t n, double q) {
  double acc = 0.0;
  if (q == 4.0) {
    for (std::size_t j = 0; j < n; ++j) {
      const double m = re[j] * re[j] + im[j] * im[j];
      acc += w[j] * m * m;
    }
  } else if (q == 6.0) {
    for (std::size_t j = 0; j < n; ++j) {
      const double m = re[j] * re[j] + im[j] * im[j];
      acc += w[j] * m * m * m;
    }
  } else if (q == 2.0) {
    for (std::size_t j = 0; j < n; ++j)
      acc += w[j] * (re[j] * re[j] + im[j] * im[j]);
  } else {
    const double h = 0.5 * q;
    for (std::size_t j = 0; j < n; ++j) {
      const double m = re[j] * re[j] + im[j] * im[j];
      acc += w[j] * std::pow(m, h);
    }
  }
  return acc;
}

}  // namespace srl::kernels::scalar

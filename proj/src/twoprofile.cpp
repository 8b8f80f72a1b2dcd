#include "srl/twoprofile.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "srl/kernels.hpp"
#include "srl/quadrature.hpp"
#include "srl/reduce.hpp"
#include "srl/theta.hpp"

namespace srl {

namespace {
constexpr double kPi = std::numbers::pi;
}

double lq_mass(const SpaceField& f, double q) {
  const std::vector<double> w = base_weights(*f.grid);
  const std::size_t n = f.values.size();
  std::vector<double> re(n), im(n);
  for (std::size_t k = 0; k < n; ++k) {
    re[k] = f.values[k].real();
    im[k] = f.values[k].imag();
  }
  return kernels::abs_pow_accum(re.data(), im.data(), w.data(), n, q);
}

double phi_of_t(double t, double q) {
  if (t < 0.0 || t > 1.0) throw std::domain_error("phi_of_t: t outside [0,1]");
  if (q < 2.0) throw std::domain_error("phi_of_t: q < 2");
  // [0, pi/2] directly; on [pi/2, pi] substitute theta = pi - w^2 so the
  // fractional-power behavior of (1 + t cos theta)^{q/2} at theta = pi
  // (t = 1) is resolved.
  const Quad1D a = gauss_legendre_panels(0.0, 0.5 * kPi, 8, 16);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += a.w[i] * std::pow(1.0 + t * std::cos(a.x[i]), 0.5 * q);
  const Quad1D b = gauss_legendre_panels(0.0, std::sqrt(0.5 * kPi), 8, 16);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double w = b.x[i];
    const double theta = kPi - w * w;
    acc += b.w[i] * 2.0 * w * std::pow(1.0 + t * std::cos(theta), 0.5 * q);
  }
  return acc / kPi;
}

double c_constant(double q) {
  if (q < 2.0) throw std::domain_error("c_constant: q < 2");
  return std::exp(0.5 * q * std::numbers::ln2 - 0.5 * std::log(kPi) +
                  std::lgamma(0.5 * (q + 1.0)) - std::lgamma(0.5 * (q + 2.0)));
}

double phi_q_functional(const TwoProfileInput& input) {
  if (input.f.grid.get() != input.g.grid.get())
    throw std::invalid_argument("phi_q: grid mismatch");
  const std::vector<double> w = base_weights(*input.f.grid);
  const ThetaAverage theta(256);
  const std::size_t n = w.size();
  return parallel_reduce(n, 2048, [&](std::size_t k0, std::size_t k1) {
    double acc = 0.0;
    for (std::size_t k = k0; k < k1; ++k)
      acc += w[k] * theta.pow_avg(std::abs(input.f.values[k]),
                                  std::abs(input.g.values[k]), input.q);
    return acc;
  });
}

double phi_q_lambda_probe(const TwoProfileInput& input, double lambda) {
  if (input.f.grid.get() != input.g.grid.get())
    throw std::invalid_argument("phi_q probe: grid mismatch");
  const SpaceGrid& grid = *input.f.grid;
  const std::vector<double> w = base_weights(grid);
  const std::size_t n = w.size();
  return parallel_reduce(n, 2048, [&](std::size_t k0, std::size_t k1) {
    double acc = 0.0;
    for (std::size_t k = k0; k < k1; ++k) {
      const auto x = grid.point(k);
      const double xn = grid.N == 3 ? x[2] : x[1];
      const cplx v = input.f.values[k] +
                     std::polar(1.0, lambda * xn) * input.g.values[k];
      acc += w[k] * std::pow(std::norm(v), 0.5 * input.q);
    }
    return acc;
  });
}

double two_profile_inequality_residual(const TwoProfileInput& input) {
  const double q = input.q;
  const double nf = std::pow(lq_mass(input.f, q), 1.0 / q);
  const double ng = std::pow(lq_mass(input.g, q), 1.0 / q);
  return c_constant(q) * std::pow(nf * nf + ng * ng, 0.5 * q) -
         phi_q_functional(input);
}

double tilde_strichartz_quotient(const ProfileFunction& psi_plus,
                                 const ProfileFunction& psi_minus, int d,
                                 const StrichartzOptions& opts) {
  const double np2 = psi_plus.l2_norm_sq();
  const double nm2 = psi_minus.l2_norm_sq();
  if (np2 + nm2 <= 0.0)
    throw std::invalid_argument("tilde quotient: zero pair");
  const double q = 2.0 + 4.0 / d;
  const PairEnergy pe = tilde_pair_energy(psi_plus, psi_minus, d, opts);
  return std::pow(2.0 * kPi, -(d + 2.0) / d) * pe.energy /
         std::pow(np2 + nm2, 0.5 * q);
}

}  // namespace srl

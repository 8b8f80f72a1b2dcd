#pragma once

// The two-profile functional Phi_q, the auxiliary function phi(t), the sharp
// constant c(q) = 2^{q/2} Gamma((q+1)/2) / (sqrt(pi) Gamma((q+2)/2)), and the
// two-profile Strichartz quotient whose value at Gaussian pairs is
// c(q) S_d^G.

#include "srl/geometry.hpp"
#include "srl/strichartz.hpp"

namespace srl {

// Complex field sampled on a SpaceGrid.
struct SpaceField {
  SpaceGridPtr grid;
  std::vector<cplx> values;

  SpaceField() = default;
  explicit SpaceField(SpaceGridPtr g)
      : grid(std::move(g)), values(grid->size(), cplx{}) {}
};

template <class Fn>
SpaceField make_space_field(const SpaceGridPtr& g, Fn&& fn) {
  SpaceField f(g);
  for (std::size_t k = 0; k < g->size(); ++k) f.values[k] = fn(g->point(k));
  return f;
}

// ||f||_q^q over the truncated grid (no tail; intended for decaying fields).
double lq_mass(const SpaceField& f, double q);

struct TwoProfileInput {
  SpaceField f, g;
  double q = 4.0;
};

// phi(t) = (1/pi) int_0^pi (1 + t cos theta)^{q/2} dtheta, 0 <= t <= 1.
double phi_of_t(double t, double q);

// Closed form via log-Gamma; equals phi_of_t(1, q).
double c_constant(double q);

// Phi_q(f, g) = (1/2pi) int int |f + e^{i theta} g|^q dtheta dx
// (the lambda -> infinity limit of int |f + e^{i lambda x_N} g|^q dx).
double phi_q_functional(const TwoProfileInput& input);

// The finite-lambda oscillatory integral, for convergence display only.
double phi_q_lambda_probe(const TwoProfileInput& input, double lambda);

// c(q) (||f||_q^2 + ||g||_q^2)^{q/2} - Phi_q(f, g)  (>= 0 up to quadrature)
double two_profile_inequality_residual(const TwoProfileInput& input);

// (2pi)^{-(d+2)/d} Phi_q(e^{itD/2} psi+, e^{-itD/2} psi-) /
//   (||psi+||^2 + ||psi-||^2)^{q/2}
double tilde_strichartz_quotient(const ProfileFunction& psi_plus,
                                 const ProfileFunction& psi_minus, int d,
                                 const StrichartzOptions& opts = {});

}  // namespace srl

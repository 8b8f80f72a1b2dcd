#pragma once

// The extension operator f -> \check f on S^{N-1}, truncated L^q(R^N)
// energies with a power-law tail model, and the Stein-Tomas quotient.

#include <array>
#include <vector>

#include "srl/geometry.hpp"

namespace srl {

struct QuotientReport {
  double numerator = 0.0;      // int |f^vee|^q including the tail estimate
  double tail_fraction = 0.0;  // tail / numerator
  double l2_norm = 0.0;
  double quotient = 0.0;
  bool trusted = false;  // tail_fraction < 0.1
  std::string to_json() const;
};

// \check f(x) = (2pi)^{-N/2} sum_j w_j f_j e^{i x . omega_j}
cplx extend(const SphereFunction& f, const std::array<double, 3>& x);

// \check f on every node of a space grid (parallel over points).
std::vector<cplx> extend_field(const SphereFunction& f, const SpaceGrid& g);

struct LqResult {
  double value = 0.0;
  double tail_fraction = 0.0;
};

// int_{R^N} |f^vee|^q dx: truncated quadrature plus the fitted tail.
LqResult lq_norm_q(const SphereFunction& f, const SpaceGrid& g, double q);

// Same, reusing a precomputed field of \check f samples.
LqResult lq_norm_q_from_field(const std::vector<cplx>& field,
                              const SpaceGrid& g, double q);

QuotientReport stein_tomas_quotient(const SphereFunction& f,
                                    const SpaceGrid& g);

// Adjoint on the truncated grid with the tail-augmented weights:
// (E* F)(omega_j) = (2pi)^{-N/2} sum_x w_eff_x F_x e^{-i x . omega_j}.
// Used by the ascent iteration; weights must match lq_norm's.
SphereFunction extend_adjoint(const std::vector<cplx>& field_times_weightless,
                              const std::vector<double>& weights,
                              const SpaceGrid& g, const SphereGridPtr& sphere);

}  // namespace srl

#pragma once

// Dyadic cubes, a finite cap atlas with a smooth partition of unity, the
// refined extension norm sup_{alpha, Q} |Q|^{-1/2} ||(1_{L(Q)} chi f)^vee||_inf,
// the cap-to-profile identity, and the bilinear / dyadic-sum diagnostics.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "srl/geometry.hpp"
#include "srl/strichartz.hpp"

namespace srl {

struct DyadicCube {
  int level = 0;                 // side 2^level
  std::array<int, 2> corner{0, 0};  // k: cube = 2^level (k + [0,1)^{N-1})

  double side() const { return std::ldexp(1.0, level); }
  bool contains(const double* xi, int dim) const {
    for (int a = 0; a < dim; ++a) {
      const double lo = corner[a] * side();
      if (xi[a] < lo || xi[a] >= lo + side()) return false;
    }
    return true;
  }
};

// Q ~ Q': equal side, closures disjoint, parents adjacent.
bool cubes_related(const DyadicCube& q, const DyadicCube& p, int dim);

struct CapAtlas {
  double eps_cap = 0.3;
  SphereGridPtr grid;
  std::vector<std::array<double, 3>> directions;
  std::vector<std::array<double, 9>> rotations;  // R_alpha north -> theta_alpha
  std::vector<std::vector<double>> chi;          // chi_alpha at the grid nodes
  double cap_angle() const;
  std::size_t size() const { return directions.size(); }
};

// Greedy covering by caps C(theta) = {omega . theta > sqrt(1-eps^2)} with a
// smooth bump partition of unity subordinate to it.
CapAtlas build_cap_atlas(const SphereGridPtr& grid, double eps_cap);

struct RefinedNormOptions {
  double search_radius = 24.0;
  double coarse_spacing = 2.0;
  int refine_levels = 2;      // each level shrinks the spacing by 4
  int top_candidates = 24;
  double min_mass_ratio = 1e-12;  // skip cubes with negligible L^1 mass
};

struct RefinedNormReport {
  double value = 0.0;
  int alpha = -1;
  DyadicCube cube;
  std::array<double, 3> x_argmax{0, 0, 0};
  bool resolution_floor_hit = false;
  double chain_constant = 0.0;  // C_N of the a-priori bound value <= C_N ||f||
  std::string to_json() const;
};

RefinedNormReport refined_norm(const SphereFunction& f, const CapAtlas& atlas,
                               const RefinedNormOptions& opts = {});

// Implied constants ||f^vee||_q / (refined^{1-sigma} ||f||^sigma).
std::vector<double> refined_inequality_profile(
    const std::vector<SphereFunction>& family, const CapAtlas& atlas,
    const SpaceGrid& space, double sigma_trial,
    const RefinedNormOptions& opts = {});

// Residual of  f^vee(x) = (2pi)^{-1/2} e^{i x_N} (e^{-i x_N T(-Lap)} psi)(x')
// for f supported in the polar cap of opening eps, with
// hat psi(xi) = f(xi, sqrt(1-xi^2)) / sqrt(1-xi^2). `f_exact` supplies exact
// values so both sides integrate the same function.
double cap_profile_identity_residual(
    const SphereGridPtr& grid, double eps_cap,
    const std::function<cplx(const std::array<double, 3>&)>& f_exact,
    int nsamples, unsigned seed);

// || Psi_Q Psi_{Q'} ||_p / ( |Q|^{1 - (d+2)/(p d)} ||psi_Q|| ||psi_{Q'}|| )
// with Psi_Q = e^{-i t Phi(-i nabla)} psi_Q. Requires Q ~ Q'.
double bilinear_ratio(const ProfileFunction& psi, const DyadicCube& q,
                      const DyadicCube& p, double p_exp, int d,
                      const Dispersion& disp);

// q* = min(q/2, (q/2)')
double q_star(double q);

// ( sum_Q |Q|^{-nu/mu'} ||f||_{L1(Q)}^nu )^{1/nu} / ||f||_mu over a bounded
// dyadic range of cube sides meeting the lattice support.
double dyadic_sum_ratio(const ProfileFunction& f, double mu, double nu);

}  // namespace srl

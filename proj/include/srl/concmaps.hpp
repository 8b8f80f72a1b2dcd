#pragma once

// Concentration identification maps between profile pairs on R^{N-1} and
// sphere functions: B_{R,delta} and its inverse, the rescaled extension
// operators T_delta built from the auxiliary pair (zeta_1, zeta_2), the
// exact rescaling identity linking the two, a local-smoothing ratio, and a
// weakly-vanishing-sequence probe.

#include <functional>
#include <utility>

#include "srl/geometry.hpp"

namespace srl {

// zeta_1(k) = 1/sqrt(1+k^2), zeta_2(k) = 2(1 - zeta_1(k))/k^2 with a series
// branch near k = 0 where the direct formula cancels catastrophically.
std::pair<double, double> zeta(double k);

struct ConcentrationFrame {
  int N = 3;
  std::array<double, 9> R{1, 0, 0, 0, 1, 0, 0, 0, 1};  // row-major
  double delta = 1.0;
  std::array<double, 3> a{0, 0, 0};  // modulation vector

  ConcentrationFrame() = default;
  ConcentrationFrame(int n, const std::array<double, 9>& rot, double del,
                     const std::array<double, 3>& mod = {0, 0, 0});
};

std::array<double, 9> rotation_z(double angle);
std::array<double, 9> rotation_y(double angle);
std::array<double, 9> rotation_2d(double angle);
std::array<double, 9> random_rotation(int N, unsigned seed);

// f(omega) = e^{i a . omega} (1+|xi|^2)^{N/4} delta^{-(N-1)/2}
//   phi^{+/-}(xi/delta) at omega = (xi, +/-1)/sqrt(1+xi^2) in the frame R.
SphereFunction b_map(const ProfileFunction& phi_plus,
                     const ProfileFunction& phi_minus,
                     const ConcentrationFrame& frame,
                     const SphereGridPtr& grid);

// Inverse change of variables, resampled onto centered lattices with the
// given point count and spacing.
std::pair<ProfileFunction, ProfileFunction> b_inverse(
    const SphereFunction& f, const ConcentrationFrame& frame, int npoints,
    double spacing);

// Cached evaluator for (T_delta psi)(x), x = (x', x_N) in R^{d+1}:
//   (2pi)^{-d/2} int psihat(xi) e^{i(xi.x' z1(d|xi|) - xi^2 x_N z2(d|xi|)/2)}
//     dxi / (1 + delta^2 xi^2)^{N/4}
// An optional spectral multiplier m(|xi|^2) composes with the amplitude.
class TDelta {
 public:
  TDelta(const ProfileFunction& psi, double delta);
  TDelta(const ProfileFunction& psi, double delta,
         const std::function<double(double)>& multiplier_of_e);
  cplx operator()(const std::array<double, 4>& x) const;
  int d() const { return d_; }

 private:
  int d_;
  double delta_;
  std::vector<double> xi_[3];
  std::vector<double> amp_re_, amp_im_;  // hat * amplitude
  std::vector<double> z1_, z2half_e_;    // zeta_1, zeta_2 * |xi|^2 / 2
  double dxivol_ = 0.0;
};

cplx t_delta(const ProfileFunction& psi, double delta,
             const std::array<double, 4>& x);

// Max abs difference over a deterministic sample set between
//   delta^{-(N-1)/2} fcheck(x'/delta, x_N/delta^2),  f = B_delta(hat psi+,
//   hat psi-),
// and (2pi)^{-1/2} (e^{i x_N/delta^2} (T_delta psi+)(x) +
//                   e^{-i x_N/delta^2} (T_delta psi-)(x', -x_N)).
double bt_identity_residual(const ProfileFunction& psi_plus,
                            const ProfileFunction& psi_minus, double delta,
                            const SphereGridPtr& grid, int nsamples,
                            unsigned seed);

// int a(x') |T_delta (-Lap/(-delta^2 Lap + 1))^{1/4} psi|^2 dx / ||psi||^2
// with a(x') = e^{-|x'|^2}.
double local_smoothing_ratio(const ProfileFunction& psi, double delta,
                             double xn_max = 40.0, int xn_nodes = 240,
                             double xp_max = 4.0, int xp_nodes = 16);

// ||T_{delta_n} psi_n||_{L^2(K)} over the box K = [-half, half]^{d+1}.
std::vector<double> weak_limit_probe(const std::vector<ProfileFunction>& psis,
                                     const std::vector<double>& deltas,
                                     double half = 2.0, int nodes_per_axis = 10);

}  // namespace srl

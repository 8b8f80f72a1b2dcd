#pragma once

// Free and perturbed Schroedinger propagators, space-time L^q energies, the
// Strichartz quotient and its closed-form Gaussian value, plus the Gaussian
// integral identity kit.
//
// Conventions: propagate multiplies the spectrum by e^{-i t phase(|xi|^2)};
// the parabolic kind has phase(E) = E/2 and realizes e^{i t Delta / 2}. The
// perturbed kind has phase(E) = T(E) = 1 - sqrt(1 - E), valid on |xi| <= 1.

#include <functional>
#include <optional>
#include <string>

#include "srl/geometry.hpp"

namespace srl {

struct Dispersion {
  enum class Kind { parabolic, perturbed, custom };
  Kind kind = Kind::parabolic;
  double support_radius = 0.0;  // 0 = unrestricted (parabolic only)
  std::function<double(double)> phase_of_e;  // E = |xi|^2 -> phase
  std::string name = "parabolic";

  double phase(double e2) const;
  // |d phase / d xi| at |xi| = r: bounds the group speed on the support.
  double group_speed(double r) const;

  static Dispersion parabolic();
  static Dispersion perturbed();  // T(E) = 1 - sqrt(1-E), |xi| <= 1
  static Dispersion custom(std::string name,
                           std::function<double(double)> phase_of_e,
                           double support_radius);
};

// u(t) = F^{-1}[ e^{-i t phase(|xi|^2)} F psi ]. t = 0 returns psi exactly.
// For non-parabolic kinds the spectral mass outside the support radius must
// be negligible (relative 1e-10), otherwise a frequency-support violation is
// raised.
ProfileFunction propagate(const ProfileFunction& psi, double t,
                          const Dispersion& disp);

struct StrichartzReport {
  int d = 0;
  std::string dispersion;
  double spacetime_energy = 0.0;
  double l2_norm = 0.0;
  double quotient = 0.0;
  double tail_fraction = 0.0;
  bool trusted = false;
  std::string to_json() const;
};

struct StrichartzOptions {
  double t_max = 40.0;
  int t_panels = 32;       // Gauss panels per sign of t
  int t_nodes = 6;         // nodes per panel
  double t_switch = 2.0;   // |t| below which the lattice route is used
  int theta_nodes = 256;   // periodic trapezoid for pair energies
};

// (2pi)^{-(d+2)/d} * iint |u|^{2+4/d} dx dt / ||psi||^{2+4/d}
StrichartzReport strichartz_quotient(const ProfileFunction& psi, int d,
                                     const Dispersion& disp,
                                     const StrichartzOptions& opts = {});

// Pair energy used by the two-profile quotient: the theta-averaged
// space-time mass lim_lambda iint |u^+ + e^{i lambda t} u^-|^q with
// u^+ = e^{itD/2} psi^+ and u^- = e^{-itD/2} psi^-.  Parabolic only.
struct PairEnergy {
  double energy = 0.0;
  double tail_fraction = 0.0;
};
PairEnergy tilde_pair_energy(const ProfileFunction& psi_plus,
                             const ProfileFunction& psi_minus, int d,
                             const StrichartzOptions& opts = {});

// Closed form S_d^G = (2pi)^{-(d+2)/d} (2pi/q)^{d/2} pi pi^{-dq/4}, q = 2+4/d.
double gaussian_strichartz_constant(int d);

// int_{R^d} e^{i x.eta - s |eta|^2 / 2} |eta|^order d eta for order 0, 2, 4.
cplx gaussian_integral(cplx s, const std::array<double, 4>& x, int order,
                       int d);

// Fixed-point ascent on the Strichartz quotient itself (exploration aid for
// d >= 3; reports whether any iterate beats the Gaussian value).
struct StrichartzAscent {
  std::vector<double> quotients;
  double best = 0.0;
  double gaussian = 0.0;
  bool beat_gaussian = false;
};
StrichartzAscent strichartz_ascent_explore(int d, int lattice_points,
                                           double spacing, int iters,
                                           unsigned seed,
                                           const StrichartzOptions& opts = {});

}  // namespace srl

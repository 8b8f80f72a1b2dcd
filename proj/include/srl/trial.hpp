#pragma once

// Trial families concentrating at one pole (g_eps) or an antipodal pair
// (f_eps), the rescaled profile phi_eps and its L^q mass, expansion sweeps
// in eps^2, and the perturbative gap certificate.
//
// L^q masses of the trial functions are always computed in rescaled
// coordinates through phi_eps; the fast e^{i x_N / eps^2} oscillation is
// never resolved on an ambient grid.

#include <string>
#include <vector>

#include "srl/geometry.hpp"

namespace srl {

// Smooth monotone ramp, 0 on (-inf, lo], 1 on [hi, inf), C^3 inside.
struct Cutoff {
  double lo = 0.25;
  double hi = 0.5;
  double operator()(double s) const;
};

struct ExpansionFit {
  std::vector<double> eps2;
  std::vector<double> values;
  double intercept = 0.0;
  double slope = 0.0;
  double residual = 0.0;  // rms deviation from the linear model
  bool trusted = false;
  std::string to_json() const;
  std::string to_csv(const std::string& value_name) const;
};

// chi(omega_N) e^{-(1-omega_N)/eps^2} sampled on the grid.
SphereFunction g_eps(double eps, const SphereGridPtr& grid,
                     const Cutoff& cutoff = {});

// The antipodal pair version; supports are disjoint for lo > 0.
SphereFunction f_eps(double eps, const SphereGridPtr& grid,
                     const Cutoff& cutoff = {});

// eps^{-d} ||g_eps||^2 via the exact 1-d radial reduction (machine
// accurate; used for coefficient extraction).
double g_l2_scaled(double eps, int d, const Cutoff& cutoff = {});

// phi_eps at (|x'| = r, x_N); d = N - 1 in {1, 2}.
cplx phi_eps(int d, double eps, double r, double xn,
             const Cutoff& cutoff = {});

struct LqPhiResult {
  double value = 0.0;
  double tail_fraction = 0.0;
};

// int_{R^{d+1}} |phi_eps|^q dx, q = 2 + 4/d, with the analytic
// C/(1+x_N^2) tail beyond the transformed window.
LqPhiResult lq_phi_eps(int d, double eps, const Cutoff& cutoff = {});

// int |g_eps^vee|^q / ||g_eps||^q and the antipodal analogue computed via
// the theta-average route (the ratio of the two is c(q) up to O(eps^4)).
double trial_quotient_single(int N, double eps, const Cutoff& cutoff = {});
double trial_quotient_antipodal(int N, double eps, const Cutoff& cutoff = {});

// log-quotient sweeps against eps^2; intercept -> log S_d^G (single) or
// log(c(q) S_d^G) (antipodal), slope -> 1/4.
ExpansionFit single_bump_sweep(const std::vector<double>& eps_list, int N,
                               const Cutoff& cutoff = {});
ExpansionFit antipodal_sweep(const std::vector<double>& eps_list, int N,
                             const Cutoff& cutoff = {});

struct GapCertificate {
  double quotient = 0.0;   // quotient of f_eps
  double threshold = 0.0;  // c(q) S_{N-1}^G
  double margin = 0.0;
  bool pass = false;
  bool trusted = false;
};
GapCertificate gap_certificate(int N, double eps, const Cutoff& cutoff = {});

// Fitted eps^2 coefficient of eps^{-d} ||g_eps||^2 / pi^{d/2} - 1
// (paper value d(2-d)/16).
ExpansionFit l2_expansion_coefficient(int d,
                                      const std::vector<double>& eps_list,
                                      const Cutoff& cutoff = {});

// Finite-difference check of the normalized L^q derivative at eps^2 = 0
// (limit value 1/2 - d^2/16).
double lq_derivative_ratio(int d, const Cutoff& cutoff = {});

}  // namespace srl

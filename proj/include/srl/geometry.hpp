#pragma once

// Quadrature grids and function containers: the sphere S^{N-1} (N = 2, 3),
// uniform lattices in R^d for profile functions, and a truncated
// radial x angular grid over R^N with a power-law tail model.
//
// All containers are immutable after construction; operations on them are
// pure functions.

#include <array>
#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "srl/quadrature.hpp"

namespace srl {

using cplx = std::complex<double>;

struct SphereGrid {
  int N = 3;          // ambient dimension, nodes live on S^{N-1}
  int resolution = 0;
  // Node coordinates, SoA. nz is empty for N = 2.
  std::vector<double> nx, ny, nz;
  std::vector<double> w;

  // Product structure (used by interpolation).
  // N == 3: polar Gauss-Legendre nodes in t = cos(theta), uniform azimuth.
  std::vector<double> polar_t, polar_w;
  int n_az = 0;
  // N == 2: uniform angles (k + 1/2) * 2pi / n.
  int n_angles = 0;

  std::size_t size() const { return w.size(); }
  std::array<double, 3> node(std::size_t j) const {
    return {nx[j], ny[j], N == 3 ? nz[j] : 0.0};
  }
  double weight_sum() const;
  std::string to_json() const;
};

using SphereGridPtr = std::shared_ptr<const SphereGrid>;

// N in {2, 3}; resolution >= 8. For N = 3 the resolution is the polar node
// count (forced even so no node sits on the equator), azimuth gets 2x that.
SphereGridPtr make_sphere_grid(int N, int resolution);

struct SphereFunction {
  SphereGridPtr grid;
  std::vector<cplx> values;

  SphereFunction() = default;
  explicit SphereFunction(SphereGridPtr g)
      : grid(std::move(g)), values(grid->size(), cplx{0.0, 0.0}) {}
  std::size_t size() const { return values.size(); }
};

SphereFunction make_constant(const SphereGridPtr& grid, cplx value);

// sum_j w_j conj(f_j) g_j   (conjugate-linear in the first argument)
cplx inner_product(const SphereFunction& f, const SphereFunction& g);
double l2_norm(const SphereFunction& f);

// f -> e^{i a . omega} f
SphereFunction modulate(const SphereFunction& f, const std::array<double, 3>& a);

// f -> f o R^{-1} by evaluating the interpolant of f at R^{-1} omega_j.
SphereFunction rotate_function(const SphereFunction& f,
                               const std::array<double, 9>& R);

// Interpolation of a sphere function at arbitrary points: trigonometric in
// azimuth, barycentric Lagrange in cos(theta) per azimuth mode, with odd
// modes rescaled by sin(theta) so spherical polynomials reproduce exactly.
// Precomputes the ring mode decomposition once; cheap to evaluate many times.
class SphereInterpolant {
 public:
  explicit SphereInterpolant(const SphereFunction& f);
  cplx operator()(const std::array<double, 3>& omega) const;

 private:
  SphereGridPtr grid_;
  std::vector<cplx> modes_;   // np x na ring DFT coefficients (odd m / s_i)
  std::vector<double> bary_;  // barycentric weights for the polar nodes
  std::vector<cplx> circle_;  // N = 2: raw values
};

// One-off convenience wrapper around SphereInterpolant.
cplx interpolate(const SphereFunction& f, const std::array<double, 3>& omega);

// --------------------------------------------------------------------------

struct ProfileFunction {
  int d = 1;
  double spacing = 0.0;
  std::array<int, 4> n{1, 1, 1, 1};       // points per axis (axes 0..d-1)
  std::array<int, 4> offset{0, 0, 0, 0};  // lattice index of the first point
  std::vector<cplx> values;               // row-major, last axis fastest

  std::size_t size() const { return values.size(); }
  double coord(int axis, int idx) const {
    return (offset[axis] + idx) * spacing;
  }
  std::size_t expected_size() const {
    std::size_t s = 1;
    for (int a = 0; a < d; ++a) s *= static_cast<std::size_t>(n[a]);
    return s;
  }
  double l2_norm_sq() const;
  double l2_norm() const;
};

// Centered lattice: n points per axis at spacing h, offsets -n/2.
ProfileFunction make_profile_lattice(int d, int npoints, double spacing);

// psi_G(x) = e^{-x^2/2} sampled on a centered lattice.
ProfileFunction make_gaussian_profile(int d, int npoints, double spacing);

// Unitary discrete Fourier transform by direct (separable) summation.
// The transform of a lattice with spacing h and n points per axis lives on
// the dual lattice with spacing 2 pi / (n h) and offsets -n/2.
ProfileFunction dft(const ProfileFunction& f);
ProfileFunction idft(const ProfileFunction& fhat);

// hat f evaluated at an arbitrary frequency: (2pi)^{-d/2} h^d sum_j f_j
// e^{-i xi . x_j}. Exact analysis of the lattice data.
cplx forward_at(const ProfileFunction& f, const std::array<double, 4>& xi);

// Band-limited synthesis at an arbitrary point from the spectrum:
// (2pi)^{-d/2} dxi^d sum_m fhat_m e^{+i xi_m . x}.
cplx synthesis_at(const ProfileFunction& fhat, const std::array<double, 4>& x);

// Same, but returns 0 outside the fundamental box of the underlying lattice
// (the synthesis is periodic; a profile is supported on its box).
cplx synthesis_at_boxed(const ProfileFunction& fhat,
                        const std::array<double, 4>& x);

// --------------------------------------------------------------------------

struct SpaceGrid {
  int N = 3;
  Quad1D radial;          // nodes/weights on [0, R_max]
  SphereGridPtr angular;
  double r_max = 0.0;
  double tail_exponent = 1.0;  // |u| ~ r^{-tail_exponent} beyond R_max
  double fit_window = 0.0;     // radial window [R_max - fit_window, R_max]

  std::size_t size() const { return radial.size() * angular->size(); }
  // Point (r_i, omega_j) with flat index i * n_ang + j.
  std::array<double, 3> point(std::size_t idx) const {
    const std::size_t na = angular->size();
    const std::size_t i = idx / na, j = idx % na;
    const auto w = angular->node(j);
    return {radial.x[i] * w[0], radial.x[i] * w[1], radial.x[i] * w[2]};
  }
};

using SpaceGridPtr = std::shared_ptr<const SpaceGrid>;

// Composite Gauss-Legendre radial rule (radial_nodes total across panels of
// 8) times a sphere grid. Requires q * tail_exponent > N for the default q
// of the dimension; validated again at integration time.
SpaceGridPtr make_space_grid(int N, double r_max, int radial_nodes,
                             int angular_resolution, double tail_exponent);

// Quadrature weights (w_r r^{N-1} w_ang) as a flat array, plus the extra
// tail-fit weights for exponent q (see lq_norm_q): effective weights such
// that sum w_eff |u|^q = truncated integral + fitted power-law tail.
std::vector<double> base_weights(const SpaceGrid& g);
std::vector<double> effective_weights(const SpaceGrid& g, double q);
// The tail part alone (effective - base).
std::vector<double> tail_weights(const SpaceGrid& g, double q);

// Integrates a real function given by samples against the base weights.
double integrate(const SpaceGrid& g, const std::vector<double>& samples);

// exact rational q = 2(N+1)/(N-1)
struct ExponentQ {
  int num = 0, den = 1;
  double value() const { return static_cast<double>(num) / den; }
};
ExponentQ critical_q(int N);

}  // namespace srl

#include "srl/concmaps.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "srl/extension.hpp"
#include "srl/kernels.hpp"
#include "srl/quadrature.hpp"
#include "srl/reduce.hpp"

namespace srl {

namespace {
constexpr double kPi = std::numbers::pi;

void check_orthogonal(const std::array<double, 9>& R) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += R[k * 3 + i] * R[k * 3 + j];
      if (std::abs(dot - (i == j ? 1.0 : 0.0)) > 1e-12)
        throw std::invalid_argument("frame: R is not orthogonal");
    }
}

std::array<double, 3> rotate_vec_t(const std::array<double, 9>& R,
                                       const std::array<double, 3>& v) {
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i)
    out[i] = R[0 * 3 + i] * v[0] + R[1 * 3 + i] * v[1] + R[2 * 3 + i] * v[2];
  return out;
}

std::array<double, 3> rotate_vec(const std::array<double, 9>& R,
                            const std::array<double, 3>& v) {
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i)
    out[i] = R[i * 3 + 0] * v[0] + R[i * 3 + 1] * v[1] + R[i * 3 + 2] * v[2];
  return out;
}

}  // namespace

std::pair<double, double> zeta(double k) {
  if (k < 0.0) throw std::domain_error("zeta: negative argument");
  const double k2 = k * k;
  const double z1 = 1.0 / std::sqrt(1.0 + k2);
  double z2;
  if (k < 1e-4) {
    z2 = 1.0 - 0.75 * k2 + 0.625 * k2 * k2;
  } else {
    z2 = 2.0 * (1.0 - z1) / k2;
  }
  return {z1, z2};
}

ConcentrationFrame::ConcentrationFrame(int n, const std::array<double, 9>& rot,
                                       double del,
                                       const std::array<double, 3>& mod)
    : N(n), R(rot), delta(del), a(mod) {
  if (del <= 0.0) throw std::invalid_argument("frame: delta must be positive");
  check_orthogonal(R);
}

std::array<double, 9> rotation_z(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {c, -s, 0, s, c, 0, 0, 0, 1};
}

std::array<double, 9> rotation_y(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {c, 0, s, 0, 1, 0, -s, 0, c};
}

std::array<double, 9> rotation_2d(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {c, -s, 0, s, c, 0, 0, 0, 1};
}

std::array<double, 9> random_rotation(int N, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  if (N == 2) return rotation_2d(2 * kPi * (rng() % 4096) / 4096.0);
  // Gram-Schmidt on three gaussian vectors
  std::array<std::array<double, 3>, 3> v;
  for (auto& row : v)
    for (auto& x : row) x = dist(rng);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < i; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += v[i][k] * v[j][k];
      for (int k = 0; k < 3; ++k) v[i][k] -= dot * v[j][k];
    }
    double nrm = 0.0;
    for (int k = 0; k < 3; ++k) nrm += v[i][k] * v[i][k];
    nrm = std::sqrt(nrm);
    for (int k = 0; k < 3; ++k) v[i][k] /= nrm;
  }
  return {v[0][0], v[1][0], v[2][0], v[0][1], v[1][1], v[2][1],
          v[0][2], v[1][2], v[2][2]};
}

SphereFunction b_map(const ProfileFunction& phi_plus,
                     const ProfileFunction& phi_minus,
                     const ConcentrationFrame& frame,
                     const SphereGridPtr& grid) {
  const int N = grid->N;
  if (frame.N != N) throw std::invalid_argument("b_map: dimension mismatch");
  if (phi_plus.d != N - 1 || phi_minus.d != N - 1)
    throw std::invalid_argument("b_map: profile dimension mismatch");
  const ProfileFunction hat_p = dft(phi_plus);
  const ProfileFunction hat_m = dft(phi_minus);
  const double delta = frame.delta;
  const double damp = std::pow(delta, -0.5 * (N - 1));
  SphereFunction f(grid);
  const std::size_t nn = grid->size();
  parallel_for(nn, [&](std::size_t j0, std::size_t j1) {
    for (std::size_t j = j0; j < j1; ++j) {
      const auto omega = grid->node(j);
      const auto v = rotate_vec_t(frame.R, omega);
      const double vn = (N == 3) ? v[2] : v[1];
      if (std::abs(vn) < 1e-9)
        throw std::domain_error("b_map: node on the rotated equator");
      std::array<double, 4> eta{0, 0, 0, 0};
      for (int i = 0; i < N - 1; ++i) eta[i] = v[i] / std::abs(vn) / delta;
      const double amp = damp * std::pow(std::abs(vn), -0.5 * N);
      const cplx val =
          (vn > 0) ? synthesis_at_boxed(hat_p, eta) : synthesis_at_boxed(hat_m, eta);
      const double aw =
          frame.a[0] * omega[0] + frame.a[1] * omega[1] + frame.a[2] * omega[2];
      f.values[j] = std::polar(1.0, aw) * amp * val;
    }
  });
  return f;
}

std::pair<ProfileFunction, ProfileFunction> b_inverse(
    const SphereFunction& f, const ConcentrationFrame& frame, int npoints,
    double spacing) {
  const int N = f.grid->N;
  if (frame.N != N)
    throw std::invalid_argument("b_inverse: dimension mismatch");
  const int d = N - 1;
  const double delta = frame.delta;
  const double damp = std::pow(delta, 0.5 * (N - 1));
  const SphereInterpolant interp(f);
  ProfileFunction plus = make_profile_lattice(d, npoints, spacing);
  ProfileFunction minus = make_profile_lattice(d, npoints, spacing);
  std::array<int, 4> idx{0, 0, 0, 0};
  for (std::size_t flat = 0; flat < plus.size(); ++flat) {
    double xi2 = 0.0;
    std::array<double, 3> xi{0, 0, 0};
    for (int a = 0; a < d; ++a) {
      xi[a] = delta * plus.coord(a, idx[a]);
      xi2 += xi[a] * xi[a];
    }
    const double s = std::sqrt(1.0 + xi2);
    const double amp = damp * std::pow(1.0 + xi2, -0.25 * N);
    for (const int sign : {+1, -1}) {
      std::array<double, 3> omega{0, 0, 0};
      for (int a = 0; a < d; ++a) omega[a] = xi[a] / s;
      omega[N - 1] = sign / s;
      const auto w = rotate_vec(frame.R, omega);
      const double aw = frame.a[0] * w[0] + frame.a[1] * w[1] + frame.a[2] * w[2];
      const cplx val = std::polar(1.0, -aw) * interp(w) * amp;
      (sign > 0 ? plus : minus).values[flat] = val;
    }
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < plus.n[a]) break;
      idx[a] = 0;
    }
  }
  return {std::move(plus), std::move(minus)};
}

TDelta::TDelta(const ProfileFunction& psi, double delta)
    : TDelta(psi, delta, std::function<double(double)>{}) {}

TDelta::TDelta(const ProfileFunction& psi, double delta,
               const std::function<double(double)>& multiplier_of_e)
    : d_(psi.d), delta_(delta) {
  if (delta < 0.0) throw std::domain_error("t_delta: negative delta");
  const ProfileFunction hat = dft(psi);
  const int N = d_ + 1;
  dxivol_ = 1.0;
  for (int a = 0; a < d_; ++a) dxivol_ *= hat.spacing;
  std::array<int, 4> idx{0, 0, 0, 0};
  for (std::size_t flat = 0; flat < hat.size(); ++flat) {
    double e = 0.0;
    std::array<double, 3> xi{0, 0, 0};
    for (int a = 0; a < d_; ++a) {
      xi[a] = hat.coord(a, idx[a]);
      e += xi[a] * xi[a];
    }
    const double k = delta * std::sqrt(e);
    const auto [z1, z2] = zeta(k);
    double amp = std::pow(1.0 + k * k, -0.25 * N);
    if (multiplier_of_e) amp *= multiplier_of_e(e);
    const cplx c = amp * hat.values[flat];
    for (int a = 0; a < d_; ++a) xi_[a].push_back(xi[a]);
    amp_re_.push_back(c.real());
    amp_im_.push_back(c.imag());
    z1_.push_back(z1);
    z2half_e_.push_back(0.5 * e * z2);
    for (int a = d_ - 1; a >= 0; --a) {
      if (++idx[a] < hat.n[a]) break;
      idx[a] = 0;
    }
  }
}

cplx TDelta::operator()(const std::array<double, 4>& x) const {
  const std::size_t m = amp_re_.size();
  static thread_local std::vector<double> ph;
  ph.resize(m);
  const double xn = x[d_];
  for (std::size_t k = 0; k < m; ++k) {
    double dot = 0.0;
    for (int a = 0; a < d_; ++a) dot += x[a] * xi_[a][k];
    ph[k] = dot * z1_[k] - xn * z2half_e_[k];
  }
  const auto acc =
      kernels::cexp_accum(ph.data(), amp_re_.data(), amp_im_.data(), m);
  return std::pow(2.0 * kPi, -0.5 * d_) * dxivol_ * acc.to_complex();
}

cplx t_delta(const ProfileFunction& psi, double delta,
             const std::array<double, 4>& x) {
  return TDelta(psi, delta)(x);
}

double bt_identity_residual(const ProfileFunction& psi_plus,
                            const ProfileFunction& psi_minus, double delta,
                            const SphereGridPtr& grid, int nsamples,
                            unsigned seed) {
  if (delta <= 0.0) throw std::domain_error("bt identity: delta <= 0");
  const int N = grid->N;
  const int d = N - 1;
  ConcentrationFrame frame(N, {1, 0, 0, 0, 1, 0, 0, 0, 1}, delta);
  const SphereFunction f = b_map(dft(psi_plus), dft(psi_minus), frame, grid);
  const TDelta tp(psi_plus, delta);
  const TDelta tm(psi_minus, delta);
  const double lhs_scale = std::pow(delta, -0.5 * (N - 1));
  const double rhs_scale = std::pow(2.0 * kPi, -0.5);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  double residual = 0.0;
  for (int s = 0; s < nsamples; ++s) {
    std::array<double, 4> x{0, 0, 0, 0};
    for (int a = 0; a <= d; ++a) x[a] = box(rng);
    const double xn = x[d];
    std::array<double, 3> y{0, 0, 0};
    for (int a = 0; a < d; ++a) y[a] = x[a] / delta;
    y[d] = xn / (delta * delta);
    const cplx lhs = lhs_scale * extend(f, y);
    std::array<double, 4> xm = x;
    xm[d] = -xn;
    const cplx rhs =
        rhs_scale * (std::polar(1.0, xn / (delta * delta)) * tp(x) +
                     std::polar(1.0, -xn / (delta * delta)) * tm(xm));
    residual = std::max(residual, std::abs(lhs - rhs));
  }
  return residual;
}

double local_smoothing_ratio(const ProfileFunction& psi, double delta,
                             double xn_max, int xn_nodes, double xp_max,
                             int xp_nodes) {
  const int d = psi.d;
  const double d2 = delta * delta;
  const TDelta op(psi, delta, [d2](double e) {
    return std::pow(e / (d2 * e + 1.0), 0.25);
  });
  const Quad1D qp = gauss_legendre_panels(-xp_max, xp_max,
                                          std::max(1, xp_nodes / 8), 8);
  const Quad1D qn = gauss_legendre_panels(-xn_max, xn_max,
                                          std::max(1, xn_nodes / 8), 8);
  // accumulate over the transverse grid x' (d <= 2) and the x_N line
  std::vector<std::array<double, 4>> pts;
  std::vector<double> wts;
  if (d == 1) {
    for (std::size_t i = 0; i < qp.size(); ++i) {
      const double a = std::exp(-qp.x[i] * qp.x[i]);
      for (std::size_t k = 0; k < qn.size(); ++k) {
        pts.push_back({qp.x[i], qn.x[k], 0, 0});
        wts.push_back(qp.w[i] * a * qn.w[k]);
      }
    }
  } else if (d == 2) {
    for (std::size_t i = 0; i < qp.size(); ++i)
      for (std::size_t j = 0; j < qp.size(); ++j) {
        const double r2 = qp.x[i] * qp.x[i] + qp.x[j] * qp.x[j];
        const double a = std::exp(-r2);
        for (std::size_t k = 0; k < qn.size(); ++k) {
          pts.push_back({qp.x[i], qp.x[j], qn.x[k], 0});
          wts.push_back(qp.w[i] * qp.w[j] * a * qn.w[k]);
        }
      }
  } else {
    throw std::invalid_argument("local smoothing: d must be 1 or 2");
  }
  const double total =
      parallel_reduce(pts.size(), 256, [&](std::size_t p0, std::size_t p1) {
        double acc = 0.0;
        for (std::size_t p = p0; p < p1; ++p)
          acc += wts[p] * std::norm(op(pts[p]));
        return acc;
      });
  return total / psi.l2_norm_sq();
}

std::vector<double> weak_limit_probe(const std::vector<ProfileFunction>& psis,
                                     const std::vector<double>& deltas,
                                     double half, int nodes_per_axis) {
  if (psis.size() != deltas.size())
    throw std::invalid_argument("weak_limit_probe: length mismatch");
  std::vector<double> out;
  out.reserve(psis.size());
  for (std::size_t n = 0; n < psis.size(); ++n) {
    const int d = psis[n].d;
    const TDelta op(psis[n], deltas[n]);
    const Quad1D q = gauss_legendre(nodes_per_axis, -half, half);
    double acc = 0.0;
    std::array<int, 4> idx{0, 0, 0, 0};
    std::size_t total = 1;
    for (int a = 0; a <= d; ++a) total *= q.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::array<double, 4> x{0, 0, 0, 0};
      double w = 1.0;
      for (int a = 0; a <= d; ++a) {
        x[a] = q.x[idx[a]];
        w *= q.w[idx[a]];
      }
      acc += w * std::norm(op(x));
      for (int a = d; a >= 0; --a) {
        if (++idx[a] < static_cast<int>(q.size())) break;
        idx[a] = 0;
      }
    }
    out.push_back(std::sqrt(acc));
  }
  return out;
}

}  // namespace srl

#include "srl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "srl/kernels.hpp"
#include "srl/reduce.hpp"

namespace srl {

namespace {
constexpr double kPi = std::numbers::pi;
}

double SphereGrid::weight_sum() const {
  return pairwise_sum(std::span<const double>(w));
}

std::string SphereGrid::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"kind\":\"sphere\",\"N\":" << N << ",\"nodes\":[";
  for (std::size_t j = 0; j < size(); ++j) {
    if (j) os << ",";
    os << "[" << nx[j] << "," << ny[j];
    if (N == 3) os << "," << nz[j];
    os << "]";
  }
  os << "],\"weights\":[";
  for (std::size_t j = 0; j < size(); ++j) {
    if (j) os << ",";
    os << w[j];
  }
  os << "]}";
  return os.str();
}

SphereGridPtr make_sphere_grid(int N, int resolution) {
  if (N != 2 && N != 3)
    throw std::invalid_argument("make_sphere_grid: N must be 2 or 3");
  if (resolution < 8)
    throw std::invalid_argument("make_sphere_grid: resolution < 8");
  auto g = std::make_shared<SphereGrid>();
  g->N = N;
  g->resolution = resolution;
  if (N == 2) {
    const int n = resolution;
    g->n_angles = n;
    g->nx.resize(n);
    g->ny.resize(n);
    g->w.assign(n, 2.0 * kPi / n);
    for (int k = 0; k < n; ++k) {
      const double th = (k + 0.5) * 2.0 * kPi / n - kPi;
      g->nx[k] = std::cos(th);
      g->ny[k] = std::sin(th);
    }
  } else {
    int np = resolution;
    if (np % 2) ++np;  // keep the equator node-free
    const int na = 2 * np;
    const Quad1D gl = gauss_legendre(np, -1.0, 1.0);
    g->polar_t = gl.x;
    g->polar_w = gl.w;
    g->n_az = na;
    const std::size_t total = static_cast<std::size_t>(np) * na;
    g->nx.resize(total);
    g->ny.resize(total);
    g->nz.resize(total);
    g->w.resize(total);
    for (int i = 0; i < np; ++i) {
      const double t = gl.x[i];
      const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
      for (int j = 0; j < na; ++j) {
        const double ph = (j + 0.5) * 2.0 * kPi / na - kPi;
        const std::size_t idx = static_cast<std::size_t>(i) * na + j;
        g->nx[idx] = s * std::cos(ph);
        g->ny[idx] = s * std::sin(ph);
        g->nz[idx] = t;
        g->w[idx] = gl.w[i] * 2.0 * kPi / na;
      }
    }
  }
  return g;
}

SphereFunction make_constant(const SphereGridPtr& grid, cplx value) {
  SphereFunction f(grid);
  std::fill(f.values.begin(), f.values.end(), value);
  return f;
}

cplx inner_product(const SphereFunction& f, const SphereFunction& g) {
  if (f.grid.get() != g.grid.get())
    throw std::invalid_argument("inner_product: grid mismatch");
  std::vector<cplx> terms(f.size());
  const auto& w = f.grid->w;
  for (std::size_t j = 0; j < f.size(); ++j)
    terms[j] = w[j] * std::conj(f.values[j]) * g.values[j];
  return pairwise_sum(std::span<const cplx>(terms));
}

double l2_norm(const SphereFunction& f) {
  return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

SphereFunction modulate(const SphereFunction& f,
                        const std::array<double, 3>& a) {
  SphereFunction g(f.grid);
  const auto& gr = *f.grid;
  const std::size_t n = f.size();
  std::vector<double> phase(n);
  for (std::size_t j = 0; j < n; ++j) {
    phase[j] = a[0] * gr.nx[j] + a[1] * gr.ny[j];
    if (gr.N == 3) phase[j] += a[2] * gr.nz[j];
  }
  std::vector<double> re(n), im(n);
  for (std::size_t j = 0; j < n; ++j) {
    re[j] = f.values[j].real();
    im[j] = f.values[j].imag();
  }
  kernels::cexp_apply(phase.data(), re.data(), im.data(), n);
  for (std::size_t j = 0; j < n; ++j) g.values[j] = {re[j], im[j]};
  return g;
}

// ---- interpolation on the product grid ------------------------------------

namespace {

// Trigonometric interpolation of n uniformly spaced periodic samples
// (angles (k + 1/2) 2pi/n - pi) at angle theta. O(n) via mode synthesis.
cplx trig_interp(const cplx* vals, int n, double theta) {
  // modes m = -n/2 .. n/2-1: c_m = (1/n) sum_k v_k e^{-i m th_k}
  // value = sum_m c_m e^{i m theta}; computed as a double loop over k with
  // the closed-form Dirichlet kernel to keep it O(n).
  // D(u) = sum_{m=-n/2}^{n/2-1} e^{imu} = e^{-iu/2} sin(n u / 2)/sin(u / 2)
  cplx acc{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const double thk = (k + 0.5) * 2.0 * kPi / n - kPi;
    const double u = theta - thk;
    const double s = std::sin(0.5 * u);
    double dr, di;
    if (std::abs(s) < 1e-14) {
      dr = n;  // u = 0 mod 2pi: the Dirichlet kernel equals n
      di = 0.0;
    } else {
      const double ratio = std::sin(0.5 * n * u) / s;
      dr = std::cos(0.5 * u) * ratio;
      di = -std::sin(0.5 * u) * ratio;
    }
    acc += vals[k] * cplx{dr, di};
  }
  return acc / static_cast<double>(n);
}

// Barycentric weights for Gauss-Legendre nodes (Wang-Xiang form).
std::vector<double> gl_bary_weights(const std::vector<double>& t,
                                    const std::vector<double>& w) {
  std::vector<double> b(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    b[i] = std::sqrt(std::max(0.0, (1.0 - t[i] * t[i]) * w[i]));
    if (i % 2) b[i] = -b[i];
  }
  return b;
}

}  // namespace

SphereInterpolant::SphereInterpolant(const SphereFunction& f)
    : grid_(f.grid) {
  const auto& g = *grid_;
  if (g.N == 2) {
    circle_ = f.values;
    return;
  }
  const int np = static_cast<int>(g.polar_t.size());
  const int na = g.n_az;
  bary_ = gl_bary_weights(g.polar_t, g.polar_w);
  modes_.assign(static_cast<std::size_t>(np) * na, cplx{});
  // ring DFT: c[i][mi] with mode m = mi <= na/2 ? mi : mi - na
  for (int i = 0; i < np; ++i) {
    const cplx* row = f.values.data() + static_cast<std::size_t>(i) * na;
    const double s = std::sqrt(std::max(1e-300, 1.0 - g.polar_t[i] * g.polar_t[i]));
    for (int mi = 0; mi < na; ++mi) {
      const int m = (mi <= na / 2) ? mi : mi - na;
      cplx c{0.0, 0.0};
      for (int j = 0; j < na; ++j) {
        const double phj = (j + 0.5) * 2.0 * kPi / na - kPi;
        c += row[j] * std::polar(1.0, -m * phj);
      }
      c /= static_cast<double>(na);
      // odd modes vanish like sin(theta) at the poles; divide that factor
      // out so the polar interpolation sees a smooth function of t
      if (m & 1) c /= s;
      modes_[static_cast<std::size_t>(i) * na + mi] = c;
    }
  }
}

cplx SphereInterpolant::operator()(const std::array<double, 3>& omega) const {
  const auto& g = *grid_;
  if (g.N == 2) {
    const double theta = std::atan2(omega[1], omega[0]);
    return trig_interp(circle_.data(), g.n_angles, theta);
  }
  const double t = std::clamp(omega[2], -1.0, 1.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
  const double phi = std::atan2(omega[1], omega[0]);
  const int np = static_cast<int>(g.polar_t.size());
  const int na = g.n_az;
  // barycentric coefficients in t
  static thread_local std::vector<double> coef;
  coef.assign(np, 0.0);
  int exact = -1;
  double den = 0.0;
  for (int i = 0; i < np; ++i) {
    const double dt = t - g.polar_t[i];
    if (std::abs(dt) < 1e-14) {
      exact = i;
      break;
    }
    coef[i] = bary_[i] / dt;
    den += coef[i];
  }
  cplx out{0.0, 0.0};
  for (int mi = 0; mi < na; ++mi) {
    const int m = (mi <= na / 2) ? mi : mi - na;
    cplx cm{0.0, 0.0};
    if (exact >= 0) {
      cm = modes_[static_cast<std::size_t>(exact) * na + mi];
    } else {
      for (int i = 0; i < np; ++i)
        cm += coef[i] * modes_[static_cast<std::size_t>(i) * na + mi];
      cm /= den;
    }
    if (m & 1) cm *= s;
    out += cm * std::polar(1.0, m * phi);
  }
  return out;
}

cplx interpolate(const SphereFunction& f, const std::array<double, 3>& omega) {
  return SphereInterpolant(f)(omega);
}

SphereFunction rotate_function(const SphereFunction& f,
                               const std::array<double, 9>& R) {
  // values of f o R^{-1} on the same grid: (f o R^{-1})(omega) = f(R^T omega)
  SphereFunction out(f.grid);
  const auto& g = *f.grid;
  const SphereInterpolant interp(f);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const auto n = g.node(j);
    std::array<double, 3> v{};
    for (int r = 0; r < 3; ++r)
      v[r] = R[0 * 3 + r] * n[0] + R[1 * 3 + r] * n[1] + R[2 * 3 + r] * n[2];
    out.values[j] = interp(v);
  }
  return out;
}

// ---- ProfileFunction -------------------------------------------------------

double ProfileFunction::l2_norm_sq() const {
  std::vector<double> terms(values.size());
  for (std::size_t j = 0; j < values.size(); ++j)
    terms[j] = std::norm(values[j]);
  double hd = 1.0;
  for (int a = 0; a < d; ++a) hd *= spacing;
  return hd * pairwise_sum(std::span<const double>(terms));
}

double ProfileFunction::l2_norm() const { return std::sqrt(l2_norm_sq()); }

ProfileFunction make_profile_lattice(int d, int npoints, double spacing) {
  if (d < 1 || d > 4) throw std::invalid_argument("profile: d must be 1..4");
  if (npoints < 2 || spacing <= 0)
    throw std::invalid_argument("profile: bad lattice");
  ProfileFunction f;
  f.d = d;
  f.spacing = spacing;
  for (int a = 0; a < d; ++a) {
    f.n[a] = npoints;
    f.offset[a] = -npoints / 2;
  }
  f.values.assign(f.expected_size(), cplx{});
  return f;
}

ProfileFunction make_gaussian_profile(int d, int npoints, double spacing) {
  ProfileFunction f = make_profile_lattice(d, npoints, spacing);
  std::array<int, 4> idx{0, 0, 0, 0};
  for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) {
      const double x = f.coord(a, idx[a]);
      r2 += x * x;
    }
    f.values[flat] = std::exp(-0.5 * r2);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < f.n[a]) break;
      idx[a] = 0;
    }
  }
  return f;
}

namespace {

// Unitary transform by direct separable summation; sign = -1 forward,
// +1 inverse. The output lives on the dual lattice (spacing 2pi/(n h),
// offsets -n/2).
ProfileFunction transform(const ProfileFunction& f, int sign) {
  ProfileFunction out;
  out.d = f.d;
  out.spacing = 2.0 * kPi / (f.n[0] * f.spacing);
  for (int a = 0; a < f.d; ++a) {
    if (f.n[a] != f.n[0])
      throw std::invalid_argument("dft: lattice must be cubic");
    out.n[a] = f.n[a];
    out.offset[a] = -f.n[a] / 2;
  }
  const int n = f.n[0];
  std::vector<cplx> A = f.values, B(A.size());
  for (int axis = 0; axis < f.d; ++axis) {
    std::vector<double> cre(static_cast<std::size_t>(n) * n),
        cim(static_cast<std::size_t>(n) * n);
    for (int m = 0; m < n; ++m) {
      const double xi = out.coord(axis, m);
      for (int j = 0; j < n; ++j) {
        const double ph = sign * xi * f.coord(axis, j);
        cre[static_cast<std::size_t>(m) * n + j] = std::cos(ph);
        cim[static_cast<std::size_t>(m) * n + j] = std::sin(ph);
      }
    }
    std::size_t stride = 1;
    for (int a = f.d - 1; a > axis; --a) stride *= f.n[a];
    const std::size_t outer = A.size() / n;
    parallel_for(outer, [&](std::size_t o0, std::size_t o1) {
      std::vector<cplx> line(n);
      for (std::size_t o = o0; o < o1; ++o) {
        const std::size_t post = o % stride;
        const std::size_t pre = o / stride;
        const std::size_t base = pre * stride * n + post;
        for (int j = 0; j < n; ++j) line[j] = A[base + j * stride];
        for (int m = 0; m < n; ++m) {
          const double* cr = cre.data() + static_cast<std::size_t>(m) * n;
          const double* ci = cim.data() + static_cast<std::size_t>(m) * n;
          double ar = 0.0, ai = 0.0;
          for (int j = 0; j < n; ++j) {
            const double vr = line[j].real(), vi = line[j].imag();
            ar += vr * cr[j] - vi * ci[j];
            ai += vr * ci[j] + vi * cr[j];
          }
          B[base + m * stride] = {ar, ai};
        }
      }
    });
    std::swap(A, B);
  }
  double scale = 1.0;
  for (int a = 0; a < f.d; ++a) scale *= f.spacing / std::sqrt(2.0 * kPi);
  for (auto& v : A) v *= scale;
  out.values = std::move(A);
  return out;
}

}  // namespace

ProfileFunction dft(const ProfileFunction& f) { return transform(f, -1); }
ProfileFunction idft(const ProfileFunction& fhat) {
  return transform(fhat, +1);
}

cplx forward_at(const ProfileFunction& f, const std::array<double, 4>& xi) {
  const std::size_t sz = f.values.size();
  static thread_local std::vector<double> ph, re, im;
  ph.resize(sz);
  re.resize(sz);
  im.resize(sz);
  std::array<int, 4> idx{0, 0, 0, 0};
  for (std::size_t flat = 0; flat < sz; ++flat) {
    double p = 0.0;
    for (int a = 0; a < f.d; ++a) p -= xi[a] * f.coord(a, idx[a]);
    ph[flat] = p;
    re[flat] = f.values[flat].real();
    im[flat] = f.values[flat].imag();
    for (int a = f.d - 1; a >= 0; --a) {
      if (++idx[a] < f.n[a]) break;
      idx[a] = 0;
    }
  }
  const auto acc = kernels::cexp_accum(ph.data(), re.data(), im.data(), sz);
  double scale = 1.0;
  for (int a = 0; a < f.d; ++a) scale *= f.spacing / std::sqrt(2.0 * kPi);
  return scale * acc.to_complex();
}

cplx synthesis_at_boxed(const ProfileFunction& fhat,
                        const std::array<double, 4>& x) {
  const double half = kPi / fhat.spacing;  // n h / 2 of the primal lattice
  for (int a = 0; a < fhat.d; ++a)
    if (std::abs(x[a]) > half) return {0.0, 0.0};
  return synthesis_at(fhat, x);
}

cplx synthesis_at(const ProfileFunction& fhat,
                  const std::array<double, 4>& x) {
  const std::size_t sz = fhat.values.size();
  static thread_local std::vector<double> ph, re, im;
  ph.resize(sz);
  re.resize(sz);
  im.resize(sz);
  std::array<int, 4> idx{0, 0, 0, 0};
  for (std::size_t flat = 0; flat < sz; ++flat) {
    double p = 0.0;
    for (int a = 0; a < fhat.d; ++a) p += x[a] * fhat.coord(a, idx[a]);
    ph[flat] = p;
    re[flat] = fhat.values[flat].real();
    im[flat] = fhat.values[flat].imag();
    for (int a = fhat.d - 1; a >= 0; --a) {
      if (++idx[a] < fhat.n[a]) break;
      idx[a] = 0;
    }
  }
  const auto acc = kernels::cexp_accum(ph.data(), re.data(), im.data(), sz);
  double scale = 1.0;
  for (int a = 0; a < fhat.d; ++a) scale *= fhat.spacing / std::sqrt(2.0 * kPi);
  return scale * acc.to_complex();
}

// ---- SpaceGrid -------------------------------------------------------------

ExponentQ critical_q(int N) {
  if (N < 2) throw std::invalid_argument("critical_q: N < 2");
  int num = 2 * (N + 1), den = N - 1;
  const int g = std::gcd(num, den);
  return {num / g, den / g};
}

SpaceGridPtr make_space_grid(int N, double r_max, int radial_nodes,
                             int angular_resolution, double tail_exponent) {
  if (r_max <= 0) throw std::invalid_argument("space grid: r_max <= 0");
  if (tail_exponent <= 0)
    throw std::invalid_argument("space grid: tail exponent <= 0");
  const double q = critical_q(N).value();
  if (q * tail_exponent <= N)
    throw std::invalid_argument("space grid: divergent tail (q p <= N)");
  auto g = std::make_shared<SpaceGrid>();
  g->N = N;
  g->r_max = r_max;
  g->tail_exponent = tail_exponent;
  const int nnodes = 8;
  const int npanels = std::max(1, radial_nodes / nnodes);
  g->radial = gauss_legendre_panels(0.0, r_max, npanels, nnodes);
  g->angular = make_sphere_grid(N, angular_resolution);
  g->fit_window = std::min(r_max * 0.4, 4.0 * kPi);
  return g;
}

std::vector<double> base_weights(const SpaceGrid& g) {
  const std::size_t nr = g.radial.size(), na = g.angular->size();
  std::vector<double> w(nr * na);
  for (std::size_t i = 0; i < nr; ++i) {
    const double r = g.radial.x[i];
    const double rw = g.radial.w[i] * std::pow(r, g.N - 1);
    for (std::size_t j = 0; j < na; ++j) w[i * na + j] = rw * g.angular->w[j];
  }
  return w;
}

std::vector<double> tail_weights(const SpaceGrid& g, double q) {
  const double p = g.tail_exponent;
  if (q * p <= g.N)
    throw std::invalid_argument("tail model: divergent configuration");
  const std::size_t nr = g.radial.size(), na = g.angular->size();
  std::vector<double> w(nr * na, 0.0);
  const double r_lo = g.r_max - g.fit_window;
  double win_mass = 0.0;
  for (std::size_t i = 0; i < nr; ++i)
    if (g.radial.x[i] >= r_lo) win_mass += g.radial.w[i];
  if (win_mass <= 0) return w;
  // integral of r^{N-1-qp} from R to infinity
  const double tail_int =
      std::pow(g.r_max, g.N - q * p) / (q * p - g.N);
  for (std::size_t i = 0; i < nr; ++i) {
    const double r = g.radial.x[i];
    if (r < r_lo) continue;
    const double c = g.radial.w[i] * std::pow(r, q * p) / win_mass * tail_int;
    for (std::size_t j = 0; j < na; ++j) w[i * na + j] = c * g.angular->w[j];
  }
  return w;
}

std::vector<double> effective_weights(const SpaceGrid& g, double q) {
  std::vector<double> w = base_weights(g);
  const std::vector<double> t = tail_weights(g, q);
  for (std::size_t k = 0; k < w.size(); ++k) w[k] += t[k];
  return w;
}

double integrate(const SpaceGrid& g, const std::vector<double>& samples) {
  const std::vector<double> w = base_weights(g);
  if (samples.size() != w.size())
    throw std::invalid_argument("integrate: sample count mismatch");
  std::vector<double> terms(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) terms[k] = w[k] * samples[k];
  return pairwise_sum(std::span<const double>(terms));
}

}  // namespace srl

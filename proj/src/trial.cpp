#include "srl/trial.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "srl/quadrature.hpp"
#include "srl/reduce.hpp"
#include "srl/special.hpp"
#include "srl/theta.hpp"
#include "srl/twoprofile.hpp"

namespace srl {

namespace {
constexpr double kPi = std::numbers::pi;

void check_eps(double eps) {
  if (!(eps > 0.0) || eps > 0.5)
    throw std::invalid_argument("trial: eps must lie in (0, 0.5]");
}

double surface_area(int d) {  // |S^{d-1}|
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

// linear least squares y ~ a + b x
struct LinFit {
  double a = 0.0, b = 0.0, rms = 0.0;
};
LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LinFit f;
  const double det = n * sxx - sx * sx;
  f.b = (n * sxy - sx * sy) / det;
  f.a = (sy - f.b * sx) / n;
  double r2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - f.a - f.b * x[i];
    r2 += e * e;
  }
  f.rms = std::sqrt(r2 / n);
  return f;
}

}  // namespace

double Cutoff::operator()(double s) const {
  if (s <= lo) return 0.0;
  if (s >= hi) return 1.0;
  const double t = (s - lo) / (hi - lo);
  // 7th-order smoothstep: C^3 at both junctions
  return t * t * t * t * (35.0 + t * (-84.0 + t * (70.0 + t * -20.0)));
}

std::string ExpansionFit::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"eps2\":[";
  for (std::size_t i = 0; i < eps2.size(); ++i)
    os << (i ? "," : "") << eps2[i];
  os << "],\"values\":[";
  for (std::size_t i = 0; i < values.size(); ++i)
    os << (i ? "," : "") << values[i];
  os << "],\"intercept\":" << intercept << ",\"slope\":" << slope
     << ",\"residual\":" << residual
     << ",\"trusted\":" << (trusted ? "true" : "false") << "}";
  return os.str();
}

std::string ExpansionFit::to_csv(const std::string& value_name) const {
  std::ostringstream os;
  os.precision(17);
  os << "eps2," << value_name << "\n";
  for (std::size_t i = 0; i < eps2.size(); ++i)
    os << eps2[i] << "," << values[i] << "\n";
  return os.str();
}

SphereFunction g_eps(double eps, const SphereGridPtr& grid,
                     const Cutoff& cutoff) {
  check_eps(eps);
  SphereFunction f(grid);
  const double inv = 1.0 / (eps * eps);
  for (std::size_t j = 0; j < grid->size(); ++j) {
    const double wn = grid->N == 3 ? grid->nz[j] : grid->ny[j];
    f.values[j] = cutoff(wn) * std::exp(-(1.0 - wn) * inv);
  }
  return f;
}

SphereFunction f_eps(double eps, const SphereGridPtr& grid,
                     const Cutoff& cutoff) {
  check_eps(eps);
  SphereFunction f(grid);
  const double inv = 1.0 / (eps * eps);
  for (std::size_t j = 0; j < grid->size(); ++j) {
    const double wn = grid->N == 3 ? grid->nz[j] : grid->ny[j];
    f.values[j] = cutoff(wn) * std::exp(-(1.0 - wn) * inv) +
                  cutoff(-wn) * std::exp(-(1.0 + wn) * inv);
  }
  return f;
}

double g_l2_scaled(double eps, int d, const Cutoff& cutoff) {
  check_eps(eps);
  if (d < 1 || d > 4) throw std::invalid_argument("g_l2_scaled: d in 1..4");
  // eps^{-d} |S^{d-1}| int_0^{umax} chi(1-e^2 u)^2 e^{-2u}
  //   u^{(d-2)/2} (2-e^2 u)^{(d-2)/2} du  with u = v^2/2
  const double umax = std::min(40.0, (1.0 - cutoff.lo) / (eps * eps));
  const Quad1D q = gauss_legendre_panels(0.0, std::sqrt(2.0 * umax), 24, 12);
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double v = q.x[i];
    const double u = 0.5 * v * v;
    const double c = cutoff(1.0 - eps * eps * u);
    const double base = u * (2.0 - eps * eps * u);
    acc += q.w[i] * c * c * std::exp(-2.0 * u) *
           std::pow(base, 0.5 * (d - 2)) * v;
  }
  return surface_area(d) * acc;
}

cplx phi_eps(int d, double eps, double r, double xn, const Cutoff& cutoff) {
  check_eps(eps);
  if (d != 1 && d != 2)
    throw std::invalid_argument("phi_eps: d must be 1 or 2");
  // u = v^2/2 substitution; rho(v) = v sqrt(1 - eps^2 v^2/4). Both
  // oscillation rates (x_N in u, r in rho) are then bounded in v.
  const double vcap = std::sqrt(2.0 * (1.0 - cutoff.lo)) / eps;
  const double vmax = std::min(std::sqrt(80.0), vcap);
  const double rate = vmax * std::abs(xn) + std::abs(r);
  const int n = static_cast<int>(48 + 1.4 * rate * vmax / kPi);
  const int npanels = std::max(4, n / 12);
  const Quad1D q = gauss_legendre_panels(0.0, vmax, npanels, 12);
  const double e2 = eps * eps;
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double v = q.x[i];
    const double v2 = v * v;
    const double rho = v * std::sqrt(1.0 - 0.25 * e2 * v2);
    const double cut = cutoff(1.0 - 0.5 * e2 * v2);
    if (cut == 0.0) continue;
    const cplx osc = std::exp(cplx(-0.5 * v2, -0.5 * v2 * xn));
    if (d == 2) {
      acc += q.w[i] * bessel_j0(rho * r) * cut * osc * v;
    } else {
      acc += q.w[i] * 2.0 * std::cos(rho * r) * cut * osc /
             std::sqrt(1.0 - 0.25 * e2 * v2);
    }
  }
  return acc * std::pow(2.0 * kPi, d == 2 ? -0.5 : -1.0);
}

LqPhiResult lq_phi_eps(int d, double eps, const Cutoff& cutoff) {
  check_eps(eps);
  const double q = 2.0 + 4.0 / d;
  const Quad1D qy = gauss_legendre_panels(0.0, 5.5, 10, 10);
  // x_N panels: dense near 0, then a tan-transformed window
  const double xcap = 80.0;
  const Quad1D q1 = gauss_legendre_panels(0.0, 8.0, 16, 10);
  const Quad1D qt =
      gauss_legendre_panels(std::atan(8.0), std::atan(xcap), 12, 10);
  std::vector<double> xs, ws;
  for (std::size_t i = 0; i < q1.size(); ++i) {
    xs.push_back(q1.x[i]);
    ws.push_back(q1.w[i]);
  }
  for (std::size_t i = 0; i < qt.size(); ++i) {
    const double c = std::cos(qt.x[i]);
    xs.push_back(std::tan(qt.x[i]));
    ws.push_back(qt.w[i] / (c * c));
  }
  const double sd1 = (d == 1) ? 2.0 : 2.0 * kPi;
  std::vector<double> F(xs.size());
  parallel_for(xs.size(), [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      const double xn = xs[i];
      const double s = std::sqrt(1.0 + xn * xn);
      double acc = 0.0;
      for (std::size_t k = 0; k < qy.size(); ++k) {
        const double y = qy.x[k];
        const cplx v = phi_eps(d, eps, y * s, xn, cutoff);
        acc += qy.w[k] * std::pow(y, d - 1) * std::pow(std::norm(v), 0.5 * q);
      }
      F[i] = sd1 * std::pow(s, d) * acc;
    }
  });
  std::vector<double> terms(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) terms[i] = ws[i] * F[i];
  const double main = 2.0 * pairwise_sum(std::span<const double>(terms));
  // F ~ C / (1 + x_N^2) at the critical exponent; fit C on the outer window
  double csum = 0.0;
  int cnt = 0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (xs[i] <= 0.7 * xcap) continue;
    csum += F[i] * (1.0 + xs[i] * xs[i]);
    ++cnt;
  }
  const double c = cnt ? csum / cnt : 0.0;
  const double tail = 2.0 * c * (0.5 * kPi - std::atan(xcap));
  LqPhiResult out;
  out.value = main + tail;
  out.tail_fraction = out.value > 0 ? tail / out.value : 0.0;
  return out;
}

double trial_quotient_single(int N, double eps, const Cutoff& cutoff) {
  const int d = N - 1;
  const double q = 2.0 + 4.0 / d;
  const double num = lq_phi_eps(d, eps, cutoff).value;
  const double den = std::pow(g_l2_scaled(eps, d, cutoff), 0.5 * q);
  return num / den;
}

double trial_quotient_antipodal(int N, double eps, const Cutoff& cutoff) {
  const int d = N - 1;
  const double q = 2.0 + 4.0 / d;
  // theta-average factor (1/2pi) int |2 cos theta|^q dtheta = 2^{q/2} c(q)
  const ThetaAverage theta(256);
  const double factor = theta.pow_avg(1.0, 1.0, q);
  const double num = factor * lq_phi_eps(d, eps, cutoff).value;
  const double den =
      std::pow(2.0 * g_l2_scaled(eps, d, cutoff), 0.5 * q);
  return num / den;
}

namespace {

ExpansionFit sweep_impl(const std::vector<double>& eps_list, int N,
                        const Cutoff& cutoff, bool antipodal) {
  if (eps_list.size() < 4)
    throw std::invalid_argument("sweep: need at least 4 eps values");
  ExpansionFit fit;
  for (const double eps : eps_list) {
    if (!(eps > 0.0) || eps > 0.35)
      throw std::invalid_argument("sweep: eps values must lie in (0, 0.35]");
    fit.eps2.push_back(eps * eps);
    const double v = antipodal ? trial_quotient_antipodal(N, eps, cutoff)
                               : trial_quotient_single(N, eps, cutoff);
    fit.values.push_back(std::log(v));
  }
  const LinFit lf = linear_fit(fit.eps2, fit.values);
  fit.intercept = lf.a;
  fit.slope = lf.b;
  fit.residual = lf.rms;
  fit.trusted = fit.residual <= 0.1 * std::abs(fit.slope);
  return fit;
}

}  // namespace

ExpansionFit single_bump_sweep(const std::vector<double>& eps_list, int N,
                               const Cutoff& cutoff) {
  return sweep_impl(eps_list, N, cutoff, false);
}

ExpansionFit antipodal_sweep(const std::vector<double>& eps_list, int N,
                             const Cutoff& cutoff) {
  return sweep_impl(eps_list, N, cutoff, true);
}

GapCertificate gap_certificate(int N, double eps, const Cutoff& cutoff) {
  const int d = N - 1;
  const double q = 2.0 + 4.0 / d;
  GapCertificate cert;
  const LqPhiResult lq = lq_phi_eps(d, eps, cutoff);
  const ThetaAverage theta(256);
  const double factor = theta.pow_avg(1.0, 1.0, q);
  cert.quotient = factor * lq.value /
                  std::pow(2.0 * g_l2_scaled(eps, d, cutoff), 0.5 * q);
  cert.threshold =
      c_constant(q) * gaussian_strichartz_constant(d);
  cert.margin = cert.quotient - cert.threshold;
  cert.trusted = lq.tail_fraction < 0.1;
  cert.pass = cert.margin > 0.0 && cert.trusted;
  return cert;
}

ExpansionFit l2_expansion_coefficient(int d,
                                      const std::vector<double>& eps_list,
                                      const Cutoff& cutoff) {
  if (eps_list.size() < 2)
    throw std::invalid_argument("l2 coefficient: need >= 2 eps values");
  ExpansionFit fit;
  const double limit = std::pow(kPi, 0.5 * d);
  for (const double eps : eps_list) {
    const double e2 = eps * eps;
    fit.eps2.push_back(e2);
    fit.values.push_back((g_l2_scaled(eps, d, cutoff) / limit - 1.0) / e2);
  }
  const LinFit lf = linear_fit(fit.eps2, fit.values);
  fit.intercept = lf.a;  // the eps^2 coefficient
  fit.slope = lf.b;      // next-order correction
  fit.residual = lf.rms;
  fit.trusted = true;
  return fit;
}

double lq_derivative_ratio(int d, const Cutoff& cutoff) {
  const double q = 2.0 + 4.0 / d;
  const double limit =
      std::pow(2.0 * kPi, -0.5 * q) * std::pow(2.0 * kPi / q, 0.5 * d) * kPi;
  const double e2a = 0.01, e2b = 0.02;
  const double fa = lq_phi_eps(d, std::sqrt(e2a), cutoff).value;
  const double fb = lq_phi_eps(d, std::sqrt(e2b), cutoff).value;
  return (fb - fa) / (e2b - e2a) / limit;
}

}  // namespace srl

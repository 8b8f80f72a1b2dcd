#include "srl/extension.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "srl/kernels.hpp"
#include "srl/reduce.hpp"

namespace srl {

namespace {
constexpr double kPi = std::numbers::pi;

double front_factor(int N) { return std::pow(2.0 * kPi, -0.5 * N); }
}  // namespace

std::string QuotientReport::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"quotient\":" << quotient << ",\"numerator\":" << numerator
     << ",\"l2_norm\":" << l2_norm << ",\"tail_fraction\":" << tail_fraction
     << ",\"trusted\":" << (trusted ? "true" : "false") << "}";
  return os.str();
}

cplx extend(const SphereFunction& f, const std::array<double, 3>& x) {
  const SphereGrid& g = *f.grid;
  const std::size_t n = g.size();
  static thread_local std::vector<double> ph, re, im;
  ph.resize(n);
  re.resize(n);
  im.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double p = x[0] * g.nx[j] + x[1] * g.ny[j];
    if (g.N == 3) p += x[2] * g.nz[j];
    ph[j] = p;
    re[j] = g.w[j] * f.values[j].real();
    im[j] = g.w[j] * f.values[j].imag();
  }
  const auto acc = kernels::cexp_accum(ph.data(), re.data(), im.data(), n);
  return front_factor(g.N) * acc.to_complex();
}

std::vector<cplx> extend_field(const SphereFunction& f, const SpaceGrid& g) {
  const SphereGrid& s = *f.grid;
  const std::size_t nn = s.size();
  const std::size_t np = g.size();
  const std::size_t na = g.angular->size();
  const double c = front_factor(s.N);
  std::vector<cplx> out(np);
  std::vector<double> wre(nn), wim(nn);
  for (std::size_t j = 0; j < nn; ++j) {
    wre[j] = s.w[j] * f.values[j].real();
    wim[j] = s.w[j] * f.values[j].imag();
  }
  parallel_for(np, [&](std::size_t p0, std::size_t p1) {
    std::vector<double> ph(nn);
    for (std::size_t p = p0; p < p1; ++p) {
      const double r = g.radial.x[p / na];
      const auto dir = g.angular->node(p % na);
      const double x0 = r * dir[0], x1 = r * dir[1], x2 = r * dir[2];
      if (s.N == 3) {
        for (std::size_t j = 0; j < nn; ++j)
          ph[j] = x0 * s.nx[j] + x1 * s.ny[j] + x2 * s.nz[j];
      } else {
        for (std::size_t j = 0; j < nn; ++j)
          ph[j] = x0 * s.nx[j] + x1 * s.ny[j];
      }
      const auto acc =
          kernels::cexp_accum(ph.data(), wre.data(), wim.data(), nn);
      out[p] = c * acc.to_complex();
    }
  });
  return out;
}

LqResult lq_norm_q_from_field(const std::vector<cplx>& field,
                              const SpaceGrid& g, double q) {
  const std::vector<double> wb = base_weights(g);
  const std::vector<double> wt = tail_weights(g, q);
  const std::size_t n = field.size();
  std::vector<double> re(n), im(n);
  for (std::size_t k = 0; k < n; ++k) {
    re[k] = field[k].real();
    im[k] = field[k].imag();
  }
  const double main = parallel_reduce(n, 4096, [&](std::size_t a, std::size_t b) {
    return kernels::abs_pow_accum(re.data() + a, im.data() + a, wb.data() + a,
                                  b - a, q);
  });
  const double tail = parallel_reduce(n, 4096, [&](std::size_t a, std::size_t b) {
    return kernels::abs_pow_accum(re.data() + a, im.data() + a, wt.data() + a,
                                  b - a, q);
  });
  LqResult res;
  res.value = main + tail;
  res.tail_fraction = res.value > 0 ? tail / res.value : 0.0;
  return res;
}

LqResult lq_norm_q(const SphereFunction& f, const SpaceGrid& g, double q) {
  return lq_norm_q_from_field(extend_field(f, g), g, q);
}

QuotientReport stein_tomas_quotient(const SphereFunction& f,
                                    const SpaceGrid& g) {
  QuotientReport rep;
  rep.l2_norm = l2_norm(f);
  if (rep.l2_norm <= 0.0)
    throw std::invalid_argument("stein_tomas_quotient: zero-norm input");
  const double q = critical_q(f.grid->N).value();
  const LqResult lq = lq_norm_q(f, g, q);
  rep.numerator = lq.value;
  rep.tail_fraction = lq.tail_fraction;
  rep.quotient = lq.value / std::pow(rep.l2_norm, q);
  rep.trusted = lq.tail_fraction < 0.1;
  return rep;
}

SphereFunction extend_adjoint(const std::vector<cplx>& field,
                              const std::vector<double>& weights,
                              const SpaceGrid& g,
                              const SphereGridPtr& sphere) {
  const std::size_t np = g.size();
  if (field.size() != np || weights.size() != np)
    throw std::invalid_argument("extend_adjoint: size mismatch");
  const std::size_t na = g.angular->size();
  const std::size_t nn = sphere->size();
  const double c = front_factor(sphere->N);
  // precompute space-point coordinates and weighted values
  std::vector<double> px(np), py(np), pz(np), wre(np), wim(np);
  for (std::size_t p = 0; p < np; ++p) {
    const double r = g.radial.x[p / na];
    const auto dir = g.angular->node(p % na);
    px[p] = r * dir[0];
    py[p] = r * dir[1];
    pz[p] = r * dir[2];
    wre[p] = weights[p] * field[p].real();
    wim[p] = weights[p] * field[p].imag();
  }
  SphereFunction out(sphere);
  parallel_for(nn, [&](std::size_t j0, std::size_t j1) {
    std::vector<double> ph(np);
    for (std::size_t j = j0; j < j1; ++j) {
      const double ox = sphere->nx[j], oy = sphere->ny[j],
                   oz = sphere->N == 3 ? sphere->nz[j] : 0.0;
      for (std::size_t p = 0; p < np; ++p)
        ph[p] = -(px[p] * ox + py[p] * oy + pz[p] * oz);
      const auto acc =
          kernels::cexp_accum(ph.data(), wre.data(), wim.data(), np);
      out.values[j] = c * acc.to_complex();
    }
  });
  return out;
}

}  // namespace srl

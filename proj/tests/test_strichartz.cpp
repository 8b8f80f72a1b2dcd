#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "srl/strichartz.hpp"

using namespace srl;
namespace {
constexpr double kPi = std::numbers::pi;

ProfileFunction random_profile(int d, int n, double h, unsigned seed) {
  ProfileFunction f = make_profile_lattice(d, n, h);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  for (std::size_t j = 0; j < f.size(); ++j) {
    f.values[j] = cplx(dist(rng), dist(rng));
  }
  // low-pass so the profile is resolved on the lattice (d = 1 helper)
  ProfileFunction hat = dft(f);
  for (int m = 0; m < hat.n[0]; ++m) {
    const double xi = hat.coord(0, m);
    hat.values[m] *= std::exp(-0.5 * xi * xi);
  }
  return idft(hat);
}

}  // namespace

TEST_CASE("propagated gaussian matches the closed form (d=1)") {
  auto psi = make_gaussian_profile(1, 192, 0.125);
  const double t = 1.7;
  const auto u = propagate(psi, t, Dispersion::parabolic());
  for (int j = 0; j < u.n[0]; j += 7) {
    const double x = u.coord(0, j);
    const cplx a(1.0, t);
    const cplx expect = std::pow(a, -0.5) * std::exp(-x * x / (2.0 * a));
    CHECK(std::abs(u.values[j] - expect) < 1e-8);
  }
}

TEST_CASE("t = 0 returns the input exactly") {
  auto psi = random_profile(1, 64, 0.25, 3);
  const auto u = propagate(psi, 0.0, Dispersion::parabolic());
  for (std::size_t j = 0; j < psi.size(); ++j)
    CHECK(u.values[j] == psi.values[j]);
}

TEST_CASE("unitarity and the group law") {
  auto psi = random_profile(1, 128, 0.25, 11);
  const auto disp = Dispersion::parabolic();
  const auto u = propagate(psi, 7.3, disp);
  CHECK(u.l2_norm() == doctest::Approx(psi.l2_norm()).epsilon(1e-10));
  const auto two_step = propagate(propagate(psi, 2.1, disp), 5.2, disp);
  const auto one_step = propagate(psi, 7.3, disp);
  double maxdiff = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j)
    maxdiff = std::max(maxdiff,
                       std::abs(two_step.values[j] - one_step.values[j]));
  CHECK(maxdiff < 1e-10);
}

TEST_CASE("frequency support violation raises for the perturbed kind") {
  auto psi = make_gaussian_profile(1, 128, 0.25);  // spectrum well beyond 1
  CHECK_THROWS(propagate(psi, 1.0, Dispersion::perturbed()));
}

TEST_CASE("gaussian strichartz quotient matches the closed form, d=2") {
  auto psi = make_gaussian_profile(2, 48, 0.35);
  const auto rep = strichartz_quotient(psi, 2, Dispersion::parabolic());
  CHECK(rep.trusted);
  CHECK(rep.quotient ==
        doctest::Approx(1.0 / (8 * kPi * kPi)).epsilon(1e-4));
}

TEST_CASE("gaussian strichartz quotient matches the closed form, d=1") {
  auto psi = make_gaussian_profile(1, 192, 0.125);
  const auto rep = strichartz_quotient(psi, 1, Dispersion::parabolic());
  CHECK(rep.trusted);
  const double expect = std::pow(2 * kPi, -3.0) / std::sqrt(3.0);
  CHECK(rep.quotient == doctest::Approx(expect).epsilon(1e-4));
}

TEST_CASE("parabolic rescaling invariance of the quotient") {
  auto psi = make_gaussian_profile(2, 48, 0.35);
  ProfileFunction scaled = psi;  // lambda^{d/2} psi(lambda x), lambda = 2
  for (int i = 0; i < scaled.n[0]; ++i)
    for (int j = 0; j < scaled.n[1]; ++j) {
      const double x = scaled.coord(0, i), y = scaled.coord(1, j);
      scaled.values[static_cast<std::size_t>(i) * scaled.n[1] + j] =
          2.0 * std::exp(-0.5 * (4 * x * x + 4 * y * y));
    }
  const auto a = strichartz_quotient(psi, 2, Dispersion::parabolic());
  const auto b = strichartz_quotient(scaled, 2, Dispersion::parabolic());
  CHECK(b.quotient == doctest::Approx(a.quotient).epsilon(1e-4));
}

TEST_CASE("closed-form constants") {
  CHECK(gaussian_strichartz_constant(2) ==
        doctest::Approx(1.0 / (8 * kPi * kPi)).epsilon(1e-14));
  CHECK(gaussian_strichartz_constant(1) ==
        doctest::Approx(std::pow(2 * kPi, -3.0) / std::sqrt(3.0))
            .epsilon(1e-14));
}

TEST_CASE("gaussian integral closed forms at the spot-check values") {
  CHECK(std::abs(gaussian_integral(1.0, {0, 0, 0, 0}, 0, 2) -
                 cplx(2 * kPi, 0)) < 1e-13);
  CHECK(std::abs(gaussian_integral(1.0, {0, 0, 0, 0}, 2, 2) -
                 cplx(4 * kPi, 0)) < 1e-13);
  CHECK(std::abs(gaussian_integral(1.0, {0, 0, 0, 0}, 4, 2) -
                 cplx(16 * kPi, 0)) < 1e-12);
  CHECK_THROWS(gaussian_integral(cplx(-1.0, 0.5), {0, 0, 0, 0}, 0, 2));
  // against lattice quadrature: d = 1, s = 1 + 0.7i, x = 0.9, order 2
  const cplx s(1.0, 0.7);
  const double x = 0.9;
  cplx acc{0, 0};
  const int n = 4000;
  const double h = 0.005;
  for (int k = -n; k <= n; ++k) {
    const double eta = k * h;
    acc += std::exp(cplx(0.0, x * eta) - 0.5 * s * eta * eta) * eta * eta * h;
  }
  CHECK(std::abs(gaussian_integral(s, {x, 0, 0, 0}, 2, 1) - acc) < 1e-8);
}

TEST_CASE("perturbed quotient approaches the parabolic one as eps -> 0") {
  auto bump_profile = [](double eps) {
    // built directly in frequency space: bump(|xi|/eps) on a lattice whose
    // dual spacing resolves the eps-ball
    ProfileFunction psi = make_profile_lattice(1, 128, 1.1 / eps);
    ProfileFunction spec = dft(psi);
    for (int m = 0; m < spec.n[0]; ++m) {
      const double r = std::abs(spec.coord(0, m)) / eps;
      spec.values[m] = (r < 1.0) ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
    }
    return idft(spec);
  };
  const auto disp_pert = Dispersion::perturbed();
  const auto disp_para = Dispersion::parabolic();
  double prev_err = 1e9;
  for (double eps : {0.4, 0.2, 0.1}) {
    // the profile disperses on the time scale 1/eps^2, so the window and
    // the panel layout scale with it
    StrichartzOptions opts;
    opts.t_max = 60.0 / (eps * eps);
    opts.t_panels = 30;
    opts.t_nodes = 5;
    // keep the lattice route until the chirp is resolvable on the lattice
    opts.t_switch = 35.0 / (eps * eps);
    auto psi = bump_profile(eps);
    const auto qp = strichartz_quotient(psi, 1, disp_para, opts);
    const auto qt = strichartz_quotient(psi, 1, disp_pert, opts);
    const double err = std::abs(qt.quotient - qp.quotient) / qp.quotient;
    CHECK(err < prev_err * 1.2);
    prev_err = err;
  }
  CHECK(prev_err < 0.05);
}

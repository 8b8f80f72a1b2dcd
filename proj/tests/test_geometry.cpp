#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "srl/geometry.hpp"

using namespace srl;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sphere grid weight sums") {
  CHECK(make_sphere_grid(2, 64)->weight_sum() ==
        doctest::Approx(2 * kPi).epsilon(1e-13));
  CHECK(make_sphere_grid(3, 32)->weight_sum() ==
        doctest::Approx(4 * kPi).epsilon(1e-13));
}

TEST_CASE("sphere grid rejects bad input") {
  CHECK_THROWS(make_sphere_grid(4, 32));
  CHECK_THROWS(make_sphere_grid(3, 4));
}

TEST_CASE("nodes are unit vectors, weights positive, equator avoided") {
  for (int N : {2, 3}) {
    auto g = make_sphere_grid(N, 24);
    for (std::size_t j = 0; j < g->size(); ++j) {
      const auto n = g->node(j);
      const double r = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
      CHECK(std::abs(r - 1.0) < 1e-12);
      CHECK(g->w[j] > 0.0);
      const double last = (N == 3) ? n[2] : n[1];
      CHECK(std::abs(last) > 1e-6);
    }
  }
}

TEST_CASE("moment quadrature: omega_N^{2m} on S^2") {
  auto g = make_sphere_grid(3, 32);
  SphereFunction one = make_constant(g, 1.0);
  // int omega_3^{2m} domega = 4pi / (2m+1)
  for (int m = 1; m <= 3; ++m) {
    SphereFunction f(g);
    for (std::size_t j = 0; j < g->size(); ++j)
      f.values[j] = std::pow(g->nz[j], m);
    const double val = inner_product(f, f).real();
    CHECK(val == doctest::Approx(4 * kPi / (2 * m + 1)).epsilon(1e-12));
  }
  SphereFunction fz(g);
  for (std::size_t j = 0; j < g->size(); ++j) fz.values[j] = g->nz[j];
  CHECK(std::abs(inner_product(one, fz)) < 1e-13);
  CHECK(inner_product(fz, fz).real() ==
        doctest::Approx(4 * kPi / 3).epsilon(1e-12));
  CHECK(inner_product(one, one).real() ==
        doctest::Approx(4 * kPi).epsilon(1e-13));
}

TEST_CASE("inner product is conjugate symmetric and linear") {
  auto g = make_sphere_grid(3, 16);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> dist;
  SphereFunction f(g), h(g);
  for (std::size_t j = 0; j < g->size(); ++j) {
    f.values[j] = {dist(rng), dist(rng)};
    h.values[j] = {dist(rng), dist(rng)};
  }
  const cplx a = inner_product(f, h);
  const cplx b = inner_product(h, f);
  CHECK(std::abs(a - std::conj(b)) < 1e-13);
  SphereFunction h2 = h;
  const cplx lam{0.7, -0.3};
  for (auto& v : h2.values) v *= lam;
  CHECK(std::abs(inner_product(f, h2) - lam * a) < 1e-13);
}

TEST_CASE("doubling resolution improves smooth-integrand quadrature 4x") {
  auto err_at = [](int res) {
    auto g = make_sphere_grid(2, res);
    // smooth but not trig-polynomial integrand on the circle
    double s = 0.0;
    for (std::size_t j = 0; j < g->size(); ++j)
      s += g->w[j] * std::exp(std::sin(3.0 * std::atan2(g->ny[j], g->nx[j])) +
                              0.5 * g->nx[j]);
    return s;
  };
  // periodic trapezoid converges geometrically; compare increments
  const double r1 = err_at(12), r2 = err_at(24), r3 = err_at(48);
  const double e1 = std::abs(r1 - r3), e2 = std::abs(r2 - r3);
  CHECK(e2 * 4.0 <= e1 + 1e-15);
}

TEST_CASE("interpolation reproduces a band-limited sphere function") {
  auto g = make_sphere_grid(3, 24);
  SphereFunction f(g);
  for (std::size_t j = 0; j < g->size(); ++j) {
    const auto n = g->node(j);
    f.values[j] = cplx(n[2] * n[2] + 0.3 * n[0], 0.2 * n[1] * n[2]);
  }
  std::mt19937_64 rng(1);
  std::normal_distribution<double> dist;
  for (int k = 0; k < 50; ++k) {
    std::array<double, 3> v{dist(rng), dist(rng), dist(rng)};
    const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (auto& c : v) c /= r;
    const cplx expect =
        cplx(v[2] * v[2] + 0.3 * v[0], 0.2 * v[1] * v[2]);
    CHECK(std::abs(interpolate(f, v) - expect) < 1e-10);
  }
}

TEST_CASE("profile dft round-trips and preserves the norm") {
  for (int d : {1, 2}) {
    auto psi = make_gaussian_profile(d, d == 1 ? 128 : 48, 0.25);
    const auto hat = dft(psi);
    CHECK(hat.l2_norm() == doctest::Approx(psi.l2_norm()).epsilon(1e-12));
    const auto back = idft(hat);
    double maxdiff = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j)
      maxdiff = std::max(maxdiff, std::abs(back.values[j] - psi.values[j]));
    CHECK(maxdiff < 1e-12);
  }
}

TEST_CASE("gaussian spectrum matches the closed form") {
  auto psi = make_gaussian_profile(1, 160, 0.2);
  const auto hat = dft(psi);
  // hat psi_G(xi) = e^{-xi^2/2}
  for (int m = 0; m < hat.n[0]; ++m) {
    const double xi = hat.coord(0, m);
    if (std::abs(xi) < 5.0)
      CHECK(std::abs(hat.values[m] - std::exp(-0.5 * xi * xi)) < 1e-10);
  }
  // forward_at agrees off-lattice
  const cplx off = forward_at(psi, {0.777, 0, 0, 0});
  CHECK(std::abs(off - std::exp(-0.5 * 0.777 * 0.777)) < 1e-10);
}

TEST_CASE("synthesis_at interpolates the lattice data") {
  auto psi = make_gaussian_profile(2, 40, 0.3);
  const auto hat = dft(psi);
  const cplx v = synthesis_at(hat, {0.45, -0.85, 0, 0});
  const double expect = std::exp(-0.5 * (0.45 * 0.45 + 0.85 * 0.85));
  CHECK(std::abs(v - expect) < 1e-9);
}

TEST_CASE("space grid: gaussian integral and precondition checks") {
  auto g = make_space_grid(3, 12.0, 240, 16, 1.0);
  std::vector<double> samples(g->size());
  for (std::size_t k = 0; k < g->size(); ++k) {
    const auto x = g->point(k);
    samples[k] = std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
  }
  CHECK(integrate(*g, samples) ==
        doctest::Approx(std::pow(kPi, 1.5)).epsilon(1e-8));
  CHECK_THROWS(make_space_grid(3, 60.0, 600, 16, 0.5));  // q p = 2 <= 3
  CHECK_NOTHROW(make_space_grid(2, 20.0, 160, 64, 0.5)); // q p = 3 > 2
}

TEST_CASE("critical exponent is stored as an exact rational") {
  CHECK(critical_q(3).num == 4);
  CHECK(critical_q(3).den == 1);
  CHECK(critical_q(2).num == 6);
  CHECK(critical_q(2).den == 1);
}

TEST_CASE("sphere grid serializes to JSON") {
  auto g = make_sphere_grid(2, 8);
  const std::string js = g->to_json();
  CHECK(js.find("\"kind\":\"sphere\"") != std::string::npos);
  CHECK(js.find("\"N\":2") != std::string::npos);
  CHECK(js.find("\"weights\"") != std::string::npos);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "srl/concmaps.hpp"
#include "srl/strichartz.hpp"

using namespace srl;
namespace {
constexpr double kPi = std::numbers::pi;

ProfileFunction smooth_random_profile(int d, int n, double h, unsigned seed) {
  ProfileFunction f = make_profile_lattice(d, n, h);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  std::array<int, 4> pidx{0, 0, 0, 0};
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) {
      const double x = f.coord(a, pidx[a]);
      r2 += x * x;
    }
    f.values[flat] = cplx(dist(rng), dist(rng)) * std::exp(-r2 / 2.0);
    for (int a = d - 1; a >= 0; --a) {
      if (++pidx[a] < f.n[a]) break;
      pidx[a] = 0;
    }
  }
  ProfileFunction hat = dft(f);
  std::array<int, 4> idx{0, 0, 0, 0};
  for (std::size_t flat = 0; flat < hat.size(); ++flat) {
    double e = 0.0;
    for (int a = 0; a < d; ++a) {
      const double xi = hat.coord(a, idx[a]);
      e += xi * xi;
    }
    hat.values[flat] *= std::exp(-e);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < hat.n[a]) break;
      idx[a] = 0;
    }
  }
  return idft(hat);
}

}  // namespace

TEST_CASE("zeta values and the series branch") {
  auto [z10, z20] = zeta(0.0);
  CHECK(z10 == 1.0);
  CHECK(z20 == 1.0);
  auto [z11, z21] = zeta(1.0);
  CHECK(z11 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(z21 == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-15));
  // series branch vs the rationalized closed form
  // zeta_2 = 2 / (sqrt(1+k^2) (sqrt(1+k^2) + 1)), stable at small k
  const double k = 1e-6;
  auto [z1s, z2s] = zeta(k);
  const double s1 = std::sqrt(1.0 + k * k);
  CHECK(std::abs(z1s - 1.0 / s1) < 1e-15);
  CHECK(std::abs(z2s - 2.0 / (s1 * (s1 + 1.0))) < 1e-12);
  CHECK_THROWS(zeta(-0.5));
}

TEST_CASE("b_map norm identity (eq. unitarity)") {
  auto grid = make_sphere_grid(3, 48);
  auto gp = make_gaussian_profile(2, 48, 0.3);
  auto gm = gp;
  for (auto& v : gm.values) v *= cplx(0.3, 0.6);
  const double target = gp.l2_norm_sq() + gm.l2_norm_sq();
  for (double delta : {1.0, 0.5, 0.1}) {
    ConcentrationFrame frame(3, rotation_y(0.4), delta);
    const SphereFunction f = b_map(gp, gm, frame, grid);
    const double n2 = inner_product(f, f).real();
    CHECK(n2 == doctest::Approx(target).epsilon(1e-7));
  }
  // delta = 2 pushes mass toward the equator; the polar rule needs res 64
  auto grid64 = make_sphere_grid(3, 64);
  ConcentrationFrame wide(3, rotation_y(0.4), 2.0);
  const SphereFunction fw = b_map(gp, gm, wide, grid64);
  CHECK(inner_product(fw, fw).real() ==
        doctest::Approx(target).epsilon(1e-6));
}

TEST_CASE("b_map with zero minus profile lives in the northern hemisphere") {
  auto grid = make_sphere_grid(3, 24);
  auto gp = make_gaussian_profile(2, 40, 0.3);
  ProfileFunction zero = gp;
  for (auto& v : zero.values) v = 0.0;
  ConcentrationFrame frame(3, {1, 0, 0, 0, 1, 0, 0, 0, 1}, 0.7);
  const SphereFunction f = b_map(gp, zero, frame, grid);
  for (std::size_t j = 0; j < grid->size(); ++j) {
    if (grid->nz[j] < 0.0) CHECK(std::abs(f.values[j]) == 0.0);
  }
}

TEST_CASE("b_inverse of the constant function samples the chart amplitude") {
  auto grid = make_sphere_grid(3, 32);
  SphereFunction one = make_constant(grid, 1.0);
  ConcentrationFrame frame(3, {1, 0, 0, 0, 1, 0, 0, 0, 1}, 1.0);
  auto [plus, minus] = b_inverse(one, frame, 24, 0.22);
  std::array<int, 4> idx{0, 0, 0, 0};
  for (std::size_t flat = 0; flat < plus.size(); ++flat) {
    double xi2 = 0.0;
    for (int a = 0; a < 2; ++a) {
      const double c = plus.coord(a, idx[a]);
      xi2 += c * c;
    }
    const double expect = std::pow(1.0 + xi2, -0.75);
    CHECK(std::abs(plus.values[flat] - expect) < 2e-5);
    CHECK(std::abs(minus.values[flat] - expect) < 2e-5);
    for (int a = 1; a >= 0; --a) {
      if (++idx[a] < plus.n[a]) break;
      idx[a] = 0;
    }
  }
}

TEST_CASE("b_map / b_inverse round trip") {
  auto grid = make_sphere_grid(3, 48);
  // mapped functions are C-infinity-flat (not analytic) at the equator, so
  // the resampling is interpolation-limited; the tolerances below are the
  // measured interpolation errors at this resolution
  SUBCASE("gaussian pair") {
    auto gp = make_gaussian_profile(2, 40, 0.3);
    ProfileFunction gm = gp;
    for (auto& v : gm.values) v *= cplx(0.2, 0.7);
    ConcentrationFrame frame(3, rotation_z(0.3), 0.8);
    const SphereFunction f = b_map(gp, gm, frame, grid);
    auto [bp, bm] = b_inverse(f, frame, 40, 0.3);
    double err2 = 0.0, ref2 = 0.0;
    for (std::size_t j = 0; j < gp.size(); ++j) {
      err2 += std::norm(bp.values[j] - gp.values[j]) +
              std::norm(bm.values[j] - gm.values[j]);
      ref2 += std::norm(gp.values[j]) + std::norm(gm.values[j]);
    }
    CHECK(std::sqrt(err2 / ref2) < 1e-4);
  }
  SUBCASE("low-passed noise pairs") {
    for (unsigned seed : {1u, 2u, 3u}) {
      auto gp = smooth_random_profile(2, 40, 0.3, seed);
      auto gm = smooth_random_profile(2, 40, 0.3, seed + 100);
      ConcentrationFrame frame(3, rotation_z(0.3), 0.8);
      const SphereFunction f = b_map(gp, gm, frame, grid);
      auto [bp, bm] = b_inverse(f, frame, 40, 0.3);
      double err2 = 0.0, ref2 = 0.0;
      for (std::size_t j = 0; j < gp.size(); ++j) {
        err2 += std::norm(bp.values[j] - gp.values[j]) +
                std::norm(bm.values[j] - gm.values[j]);
        ref2 += std::norm(gp.values[j]) + std::norm(gm.values[j]);
      }
      CHECK(std::sqrt(err2 / ref2) < 5e-3);
    }
  }
}

TEST_CASE("b_inverse norm identity for mapped data") {
  auto grid = make_sphere_grid(3, 48);
  auto gp = smooth_random_profile(2, 40, 0.3, 7);
  auto gm = smooth_random_profile(2, 40, 0.3, 8);
  ConcentrationFrame frame(3, random_rotation(3, 42), 0.6);
  const SphereFunction f = b_map(gp, gm, frame, grid);
  auto [bp, bm] = b_inverse(f, frame, 40, 0.3);
  const double lhs = bp.l2_norm_sq() + bm.l2_norm_sq();
  const double rhs = inner_product(f, f).real();
  CHECK(lhs == doctest::Approx(rhs).epsilon(5e-3));
}

TEST_CASE("t_delta at delta = 0 is the free propagator") {
  auto psi = make_gaussian_profile(1, 96, 0.25);
  const auto u = propagate(psi, 1.3, Dispersion::parabolic());
  const TDelta op(psi, 0.0);
  for (int j = 0; j < psi.n[0]; j += 9) {
    const double x = psi.coord(0, j);
    CHECK(std::abs(op({x, 1.3, 0, 0}) - u.values[j]) < 1e-10);
  }
}

TEST_CASE("t_delta self-oracle at doubled spectral density") {
  auto psi = make_gaussian_profile(2, 40, 0.3);
  auto psi_fine = make_gaussian_profile(2, 80, 0.3);
  const TDelta coarse(psi, 0.1);
  const TDelta fine(psi_fine, 0.1);
  for (const auto& x : {std::array<double, 4>{0, 0, 1, 0},
                        std::array<double, 4>{0.7, -0.4, 0.9, 0},
                        std::array<double, 4>{1.5, 0.2, -1.1, 0}}) {
    CHECK(std::abs(coarse(x) - fine(x)) < 1e-7);
  }
}

TEST_CASE("T_delta converges to the free propagator in truncated L^q") {
  auto psi = make_gaussian_profile(1, 96, 0.25);
  const Quad1D qx = gauss_legendre_panels(-6.0, 6.0, 6, 6);
  const Quad1D qt = gauss_legendre_panels(-8.0, 8.0, 8, 6);
  double prev = 1e300;
  for (double delta : {0.4, 0.2, 0.1, 0.05}) {
    const TDelta op(psi, delta);
    const TDelta op0(psi, 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < qx.size(); ++i)
      for (std::size_t k = 0; k < qt.size(); ++k) {
        const std::array<double, 4> x{qx.x[i], qt.x[k], 0, 0};
        acc += qx.w[i] * qt.w[k] * std::pow(std::abs(op(x) - op0(x)), 6.0);
      }
    const double norm = std::pow(acc, 1.0 / 6.0);
    CHECK(norm < prev);
    prev = norm;
  }
}

TEST_CASE("bt rescaling identity") {
  auto grid = make_sphere_grid(3, 48);
  // box size 64 * 0.3 = 19.2 keeps the aliasing of the (1+d^2 xi^2)^{-N/4}
  // amplitude (poles at xi = +-i/delta) below 1e-6 up to delta = 1
  auto gp = make_gaussian_profile(2, 64, 0.3);
  ProfileFunction gm = gp;
  for (auto& v : gm.values) v *= cplx(0.5, -0.25);
  SUBCASE("gaussian pair at delta = 0.5") {
    const double r = bt_identity_residual(gp, gm, 0.5, grid, 200, 1234);
    CHECK(r <= 1e-6);
  }
  SUBCASE("one-sided pair") {
    ProfileFunction zero = gp;
    for (auto& v : zero.values) v = 0.0;
    const double r = bt_identity_residual(gp, zero, 0.5, grid, 100, 77);
    CHECK(r <= 1e-6);
  }
  SUBCASE("residual stays flat across delta") {
    double worst = 0.0;
    for (double delta : {1.0, 0.5, 0.25}) {
      worst = std::max(worst,
                       bt_identity_residual(gp, gm, delta, grid, 60, 5));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("local smoothing ratio is bounded uniformly in delta") {
  auto psi = make_gaussian_profile(1, 96, 0.25);
  double lo = 1e300, hi = 0.0;
  for (double delta : {0.8, 0.4, 0.2, 0.1}) {
    const double r = local_smoothing_ratio(psi, delta, 30.0, 160, 4.0, 16);
    CHECK(r > 0.0);
    CHECK(std::isfinite(r));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo <= 3.0);
}

TEST_CASE("high-frequency data does not break the smoothing bound") {
  auto psi = make_gaussian_profile(1, 96, 0.25);
  ProfileFunction mod = psi;
  for (int j = 0; j < mod.n[0]; ++j)
    mod.values[j] *= std::polar(1.0, 6.0 * mod.coord(0, j));
  const double base = local_smoothing_ratio(psi, 0.4, 30.0, 160, 4.0, 16);
  const double high = local_smoothing_ratio(mod, 0.4, 30.0, 160, 4.0, 16);
  CHECK(high <= 3.0 * base);
}

TEST_CASE("weak limit probe: translates decay, a fixed profile does not") {
  std::vector<ProfileFunction> translates, fixed;
  std::vector<double> deltas;
  for (int n = 1; n <= 4; ++n) {
    ProfileFunction g = make_profile_lattice(1, 128, 0.25);
    for (int j = 0; j < g.n[0]; ++j) {
      const double x = g.coord(0, j) - 2.0 * n;
      g.values[j] = std::exp(-0.5 * x * x);
    }
    translates.push_back(g);
    fixed.push_back(make_gaussian_profile(1, 128, 0.25));
    deltas.push_back(1.0 / n);
  }
  const auto decay = weak_limit_probe(translates, deltas);
  for (std::size_t i = 1; i < decay.size(); ++i) CHECK(decay[i] < decay[i - 1]);
  const auto flat = weak_limit_probe(fixed, deltas);
  CHECK(flat.back() > 0.25 * flat.front());
  CHECK(weak_limit_probe({}, {}).empty());
  CHECK_THROWS(weak_limit_probe(translates, {1.0}));
}

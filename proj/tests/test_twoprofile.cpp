#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "srl/twoprofile.hpp"

using namespace srl;
namespace {
constexpr double kPi = std::numbers::pi;

SpaceGridPtr field_grid() {
  static SpaceGridPtr g = make_space_grid(3, 7.0, 160, 16, 1.0);
  return g;
}

SpaceField gaussian_field(double width, cplx amp) {
  return make_space_field(field_grid(), [=](std::array<double, 3> x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return amp * std::exp(-r2 / (2 * width * width));
  });
}

}  // namespace

TEST_CASE("phi_of_t at the closed-form corner values") {
  CHECK(phi_of_t(0.0, 3.7) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(phi_of_t(1.0, 4.0) == doctest::Approx(1.5).epsilon(1e-11));
  CHECK(phi_of_t(1.0, 6.0) == doctest::Approx(2.5).epsilon(1e-11));
  CHECK_THROWS(phi_of_t(-0.1, 4.0));
  CHECK_THROWS(phi_of_t(1.1, 4.0));
  CHECK_THROWS(phi_of_t(0.5, 1.0));
}

TEST_CASE("phi is nondecreasing in t") {
  for (double q : {2.0, 8.0 / 3.0, 4.0, 6.0}) {
    double prev = 0.0;
    for (double t = 0.0; t <= 1.0; t += 0.05) {
      const double v = phi_of_t(t, q);
      CHECK(v >= prev - 1e-13);
      prev = v;
    }
  }
}

TEST_CASE("c_constant closed forms and quadrature consistency") {
  CHECK(c_constant(2.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(c_constant(4.0) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(c_constant(6.0) == doctest::Approx(2.5).epsilon(1e-13));
  for (double q : {2.0, 8.0 / 3.0, 10.0 / 3.0, 4.0, 6.0}) {
    CHECK(std::abs(c_constant(q) - phi_of_t(1.0, q)) <= 1e-10);
    if (q > 2.0) CHECK(c_constant(q) > 1.0);
  }
}

TEST_CASE("Phi_q with g = 0 is the plain L^q mass") {
  TwoProfileInput in;
  in.f = gaussian_field(1.0, {1.3, -0.4});
  in.g = SpaceField(field_grid());
  in.q = 4.0;
  CHECK(phi_q_functional(in) ==
        doctest::Approx(lq_mass(in.f, 4.0)).epsilon(1e-12));
}

TEST_CASE("equality case |f| = |g| saturates the inequality") {
  TwoProfileInput in;
  in.f = gaussian_field(1.0, {1.0, 0.0});
  in.g = in.f;
  for (auto& v : in.g.values) v *= std::polar(1.0, 0.83);
  in.q = 4.0;
  const double phi = phi_q_functional(in);
  const double nf4 = lq_mass(in.f, 4.0);
  // c(4) (2 ||f||_4^2)^2
  CHECK(phi == doctest::Approx(1.5 * 4.0 * nf4).epsilon(1e-10));
  CHECK(std::abs(two_profile_inequality_residual(in)) < 1e-8 * phi);
}

TEST_CASE("g = 0 residual is (c(q) - 1) ||f||_q^q") {
  TwoProfileInput in;
  in.f = gaussian_field(0.8, {0.9, 0.2});
  in.g = SpaceField(field_grid());
  in.q = 4.0;
  const double res = two_profile_inequality_residual(in);
  CHECK(res == doctest::Approx(0.5 * lq_mass(in.f, 4.0)).epsilon(1e-10));
}

TEST_CASE("two-profile inequality on random smooth pairs") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> dist;
  for (int rep = 0; rep < 20; ++rep) {
    TwoProfileInput in;
    const double a = 0.6 + 0.2 * std::abs(dist(rng));
    const double b = 0.6 + 0.2 * std::abs(dist(rng));
    in.f = make_space_field(field_grid(), [&](std::array<double, 3> x) {
      const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
      return cplx(1.0 + 0.3 * x[0], 0.4 * x[2]) * std::exp(-r2 / (2 * a));
    });
    in.g = make_space_field(field_grid(), [&](std::array<double, 3> x) {
      const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
      return cplx(0.7, 0.2 * x[1]) * std::exp(-r2 / (2 * b));
    });
    in.q = (rep % 2) ? 4.0 : 6.0;
    CHECK(two_profile_inequality_residual(in) >= -1e-8);
  }
}

TEST_CASE("lambda probe approaches the theta average") {
  auto grid2 = make_space_grid(2, 6.0, 480, 1024, 0.5);
  TwoProfileInput in;
  in.f = make_space_field(grid2, [](std::array<double, 3> x) {
    return cplx(1.0 + 0.3 * x[0], 0.0) *
           std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2.0);
  });
  in.g = make_space_field(grid2, [](std::array<double, 3> x) {
    return cplx(0.5, -0.2 * x[1]) *
           std::exp(-(x[0] * x[0] + x[1] * x[1]) / 1.6);
  });
  in.q = 6.0;
  const double avg = phi_q_functional(in);
  double prev = 1e300;
  for (double lambda : {5.0, 10.0, 20.0}) {
    const double probe = phi_q_lambda_probe(in, lambda);
    const double dev = std::abs(probe - avg);
    CHECK(dev < prev * 1.05);
    prev = dev;
  }
  CHECK(prev < 5e-3 * avg);
}

TEST_CASE("empty probe: grid mismatch raises") {
  TwoProfileInput in;
  in.f = gaussian_field(1.0, 1.0);
  auto other = make_space_grid(3, 7.0, 160, 16, 1.0);
  in.g = SpaceField(other);
  CHECK_THROWS(phi_q_functional(in));
}

TEST_CASE("tilde quotient: gaussian pair at d = 2 gives c(4) S_2^G") {
  auto psi = make_gaussian_profile(2, 48, 0.35);
  ProfileFunction conj_psi = psi;  // psi_G is real
  const double val = tilde_strichartz_quotient(psi, conj_psi, 2);
  const double expect = 1.5 * gaussian_strichartz_constant(2);
  CHECK(val == doctest::Approx(expect).epsilon(1e-4));
  CHECK(expect == doctest::Approx(3.0 / (16 * kPi * kPi)).epsilon(1e-14));
}

TEST_CASE("tilde quotient reduces to the one-profile quotient") {
  auto psi = make_gaussian_profile(2, 48, 0.35);
  ProfileFunction zero = psi;
  for (auto& v : zero.values) v = 0.0;
  const double val = tilde_strichartz_quotient(psi, zero, 2);
  const auto single = strichartz_quotient(psi, 2, Dispersion::parabolic());
  CHECK(val == doctest::Approx(single.quotient).epsilon(1e-10));
  CHECK_THROWS(tilde_strichartz_quotient(zero, zero, 2));
}

TEST_CASE("tilde quotient: gaussian pair at d = 1") {
  auto psi = make_gaussian_profile(1, 192, 0.125);
  const double val = tilde_strichartz_quotient(psi, psi, 1);
  const double expect = 2.5 * std::pow(2 * kPi, -3.0) / std::sqrt(3.0);
  CHECK(val == doctest::Approx(expect).epsilon(1e-4));
}

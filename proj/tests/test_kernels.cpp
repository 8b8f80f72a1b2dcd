#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "srl/kernels.hpp"
#include "srl/quadrature.hpp"
#include "srl/reduce.hpp"

using namespace srl;

namespace {

std::vector<double> random_vec(std::size_t n, double lo, double hi,
                               unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar and simd cexp_accum agree") {
  for (unsigned seed : {1u, 2u, 3u}) {
    for (std::size_t n : {1ul, 7ul, 64ul, 1001ul}) {
      const auto ph = random_vec(n, -5000.0, 5000.0, seed);
      const auto re = random_vec(n, -2.0, 2.0, seed + 10);
      const auto im = random_vec(n, -2.0, 2.0, seed + 20);
      const auto a = kernels::scalar::cexp_accum(ph.data(), re.data(),
                                                 im.data(), n);
      const auto b = kernels::cexp_accum(ph.data(), re.data(), im.data(), n);
      const double scale = std::sqrt(static_cast<double>(n)) + 1.0;
      CHECK(std::abs(a.re - b.re) < 1e-12 * scale);
      CHECK(std::abs(a.im - b.im) < 1e-12 * scale);
    }
  }
}

TEST_CASE("simd sincos matches libm over a wide range") {
  const std::size_t n = 4096;
  const auto ph = random_vec(n, -9e5, 9e5, 99);
  std::vector<double> c(n), s(n);
  kernels::sincos_array(ph.data(), c.data(), s.data(), n);
  for (std::size_t j = 0; j < n; ++j) {
    CHECK(std::abs(c[j] - std::cos(ph[j])) < 5e-15);
    CHECK(std::abs(s[j] - std::sin(ph[j])) < 5e-15);
  }
}

TEST_CASE("huge arguments fall back to the scalar path") {
  std::vector<double> ph{1.5e7, -3.0e9, 2.0, 0.5};
  std::vector<double> c(4), s(4);
  kernels::sincos_array(ph.data(), c.data(), s.data(), 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(c[j] == doctest::Approx(std::cos(ph[j])).epsilon(1e-12));
    CHECK(s[j] == doctest::Approx(std::sin(ph[j])).epsilon(1e-12));
  }
}

TEST_CASE("cexp_apply multiplies by a unit phase") {
  const std::size_t n = 513;
  const auto ph = random_vec(n, -100.0, 100.0, 7);
  auto re = random_vec(n, -1.0, 1.0, 8);
  auto im = random_vec(n, -1.0, 1.0, 9);
  const auto re0 = re, im0 = im;
  kernels::cexp_apply(ph.data(), re.data(), im.data(), n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto expect =
        std::complex<double>(re0[j], im0[j]) *
        std::exp(std::complex<double>(0.0, ph[j]));
    CHECK(std::abs(re[j] - expect.real()) < 1e-13);
    CHECK(std::abs(im[j] - expect.imag()) < 1e-13);
  }
}

TEST_CASE("abs_pow_accum fast paths match pow") {
  const std::size_t n = 777;
  const auto re = random_vec(n, -2.0, 2.0, 1);
  const auto im = random_vec(n, -2.0, 2.0, 2);
  const auto w = random_vec(n, 0.0, 1.0, 3);
  for (double q : {2.0, 4.0, 6.0, 10.0 / 3.0}) {
    double ref = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      ref += w[j] * std::pow(re[j] * re[j] + im[j] * im[j], q / 2);
    const double got =
        kernels::abs_pow_accum(re.data(), im.data(), w.data(), n, q);
    CHECK(got == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("pairwise sum is exact on cancelling data and order-fixed") {
  std::vector<double> v(20000);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = (i % 2 ? 1.0 : -1.0) * (1.0 + 1e-14 * i);
  const double a = pairwise_sum(std::span<const double>(v));
  const double b = pairwise_sum(std::span<const double>(v));
  CHECK(a == b);  // bitwise deterministic
}

TEST_CASE("parallel_reduce is independent of the thread count path") {
  std::vector<double> v = random_vec(100000, -1.0, 1.0, 42);
  auto sum_fn = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t i = a; i < b; ++i) s += v[i];
    return s;
  };
  const double r1 = parallel_reduce(v.size(), 1024, sum_fn);
  const double r2 = parallel_reduce(v.size(), 1024, sum_fn);
  CHECK(r1 == r2);
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const Quad1D q = gauss_legendre(12, 0.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    s += q.w[i] * std::pow(q.x[i], 23.0);
  CHECK(s == doctest::Approx(std::pow(2.0, 24.0) / 24.0).epsilon(1e-13));
}

TEST_CASE("composite panels integrate a smooth oscillation") {
  const Quad1D q = gauss_legendre_panels(0.0, 10.0, 20, 8);
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.w[i] * std::sin(q.x[i]);
  CHECK(s == doctest::Approx(1.0 - std::cos(10.0)).epsilon(1e-13));
}

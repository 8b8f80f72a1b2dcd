#include "srl/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace srl {

Quad1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  Quad1D q;
  q.x.resize(n);
  q.w.resize(n);
  // Newton on Legendre polynomials with the Chebyshev-based initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // one polishing step for the weight
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    q.x[i] = -x;
    q.w[i] = w;
    q.x[n - 1 - i] = x;
    q.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) q.x[n / 2] = 0.0;
  return q;
}

Quad1D gauss_legendre(int n, double a, double b) {
  Quad1D base = gauss_legendre(n);
  const double h = 0.5 * (b - a), c = 0.5 * (b + a);
  for (int i = 0; i < n; ++i) {
    base.x[i] = c + h * base.x[i];
    base.w[i] *= h;
  }
  return base;
}

Quad1D gauss_legendre_panels(double a, double b, int npanels, int nnodes) {
  if (npanels < 1) throw std::invalid_argument("panels < 1");
  const Quad1D base = gauss_legendre(nnodes);
  Quad1D q;
  q.x.reserve(static_cast<std::size_t>(npanels) * nnodes);
  q.w.reserve(static_cast<std::size_t>(npanels) * nnodes);
  const double step = (b - a) / npanels;
  for (int p = 0; p < npanels; ++p) {
    const double lo = a + p * step;
    const double h = 0.5 * step, c = lo + h;
    for (int i = 0; i < nnodes; ++i) {
      q.x.push_back(c + h * base.x[i]);
      q.w.push_back(h * base.w[i]);
    }
  }
  return q;
}

Quad1D periodic_trapezoid(int n) {
  if (n < 1) throw std::invalid_argument("periodic_trapezoid: n < 1");
  Quad1D q;
  q.x.resize(n);
  q.w.assign(n, 2.0 * std::numbers::pi / n);
  for (int k = 0; k < n; ++k)
    q.x[k] = -std::numbers::pi + 2.0 * std::numbers::pi * k / n;
  return q;
}

}  // namespace srl

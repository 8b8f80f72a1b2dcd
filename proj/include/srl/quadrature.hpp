#pragma once

#include <cstddef>
#include <vector>

namespace srl {

struct Quad1D {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

// Gauss-Legendre nodes/weights on [-1, 1].
Quad1D gauss_legendre(int n);

// Gauss-Legendre rule mapped to [a, b].
Quad1D gauss_legendre(int n, double a, double b);

// Composite rule: npanels equal panels on [a, b], nnodes Gauss points each.
Quad1D gauss_legendre_panels(double a, double b, int npanels, int nnodes);

// Uniform periodic trapezoid nodes on [-pi, pi): x_k = -pi + 2 pi k / n,
// w_k = 2 pi / n. Spectrally accurate for smooth periodic integrands.
Quad1D periodic_trapezoid(int n);

}  // namespace srl

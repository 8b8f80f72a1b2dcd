#pragma once

namespace srl {

// Bessel J0 via the classic rational (|x| < 8) / asymptotic (|x| >= 8)
// split. Absolute error below ~1e-8, a few tens of ns per call; the
// library cyl_bessel_j is accurate but three orders of magnitude slower.
double bessel_j0(double x);

}  // namespace srl

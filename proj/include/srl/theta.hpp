#pragma once

// Periodic-trapezoid average over the modulation angle:
//   (1/2pi) int_{-pi}^{pi} |a + e^{i theta} b|^q dtheta.
// The integrand is a trigonometric polynomial of degree q/2 for even q, so
// the default 256-node rule is exact there and spectrally accurate otherwise.

#include <cmath>
#include <numbers>
#include <vector>

namespace srl {

class ThetaAverage {
 public:
  explicit ThetaAverage(int nodes = 256) : cosv_(nodes) {
    for (int k = 0; k < nodes; ++k)
      cosv_[k] = std::cos(-std::numbers::pi +
                          2.0 * std::numbers::pi * k / nodes);
  }

  double pow_avg(double a, double b, double q) const {
    const double s = a * a + b * b, p = 2.0 * a * b;
    double acc = 0.0;
    if (q == 4.0) {
      for (const double c : cosv_) {
        const double m = s + p * c;
        acc += m * m;
      }
    } else if (q == 6.0) {
      for (const double c : cosv_) {
        const double m = s + p * c;
        acc += m * m * m;
      }
    } else if (q == 2.0) {
      acc = s * cosv_.size();
    } else {
      const double h = 0.5 * q;
      for (const double c : cosv_)
        acc += std::pow(std::max(0.0, s + p * c), h);
    }
    return acc / static_cast<double>(cosv_.size());
  }

  int nodes() const { return static_cast<int>(cosv_.size()); }

 private:
  std::vector<double> cosv_;
};

}  // namespace srl

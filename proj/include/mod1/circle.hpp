// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace mod1 {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Representative of x modulo 1 in [0, 1). The class of 1.0 is 0.0.
inline double reduce(double x) {
  double r = x - std::floor(x);
  // x slightly below an integer can round up to exactly 1.0
  return r >= 1.0 ? 0.0 : r;
}

/// e^{2 pi i t}. Exact at multiples of a quarter turn so that lattice
/// atoms produce clean coefficients.
inline Complex turn(double t) {
  double r = reduce(t);
  double q = 4.0 * r;
  if (q == std::floor(q)) {
    switch (static_cast<int>(q)) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  double angle = kTwoPi * r;
  return {std::cos(angle), std::sin(angle)};
}

/// sin(t)/t with the removable singularity filled in.
inline double sinc(double t) {
  double a = std::abs(t);
  if (a < 1e-4) {
    double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

}  // namespace mod1

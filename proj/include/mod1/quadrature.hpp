// SPDX-License-Identifier: Apache-2.0
#pragma once

/// Globally adaptive Gauss-Kronrod (7/15) quadrature with caller-declared
/// breakpoints. The integrand may be real or complex valued; the error
/// estimate is |K15 - G7| summed over the active panels.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <sstream>
#include <vector>

#include "mod1/error.hpp"

namespace mod1::quad {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_panels = 4000;
  /// Split [a, b] into this many equal panels before adapting; oscillatory
  /// integrands want at least one panel per period.
  std::size_t initial_pieces = 1;
};

template <typename T>
struct Result {
  T value{};
  double error = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

// Kronrod abscissae on [-1, 1], largest first; odd indices are Gauss nodes.
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for kNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <typename T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename T, typename F>
Panel<T> kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const T sum = f(center - dx) + f(center + dx);
    kronrod += sum * kKronrodWeights[i];
    if (i % 2 == 1) gauss += sum * kGaussWeights[i / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, magnitude(kronrod - gauss)};
}

}  // namespace detail

/// Integrate f over [a, b]. Breakpoints strictly inside (a, b) start new
/// panels so that jump discontinuities are never straddled.
template <typename F>
auto integrate(F f, double a, double b, std::span<const double> breakpoints = {},
               const Options& options = {}) {
  using T = std::decay_t<decltype(f(a))>;
  using detail::Panel;

  Result<T> result;
  if (!(a < b)) return result;

  std::vector<double> cuts{a, b};
  for (double p : breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const std::size_t pieces = std::max<std::size_t>(1, options.initial_pieces);
  std::priority_queue<Panel<T>> panels;
  T total{};
  double total_error = 0.0;
  auto push = [&](double lo, double hi) {
    Panel<T> p = detail::kronrod15<T>(f, lo, hi);
    result.evaluations += 15;
    total += p.value;
    total_error += p.error;
    panels.push(p);
  };
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = cuts[c];
    const double width = (cuts[c + 1] - lo) / static_cast<double>(pieces);
    for (std::size_t k = 0; k < pieces; ++k) {
      const double hi = k + 1 == pieces ? cuts[c + 1] : lo + width * static_cast<double>(k + 1);
      push(lo + width * static_cast<double>(k), hi);
    }
  }

  auto tolerance = [&] { return std::max(options.abs_tol, options.rel_tol * detail::magnitude(total)); };
  while (total_error > tolerance()) {
    if (panels.size() >= options.max_panels) {
      std::ostringstream msg;
      msg << "quadrature did not converge on [" << a << ", " << b << "] after " << panels.size()
          << " panels; error estimate " << total_error;
      throw NumericalFailure(msg.str(), total_error);
    }
    Panel<T> worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      std::ostringstream msg;
      msg << "quadrature panel [" << worst.a << ", " << worst.b
          << "] cannot be bisected further; error estimate " << total_error;
      throw NumericalFailure(msg.str(), total_error);
    }
    panels.pop();
    total -= worst.value;
    total_error -= worst.error;
    push(worst.a, mid);
    push(mid, worst.b);
  }

  // Re-sum from the panels to shed the cancellation noise of the running total.
  T exact_total{};
  double exact_error = 0.0;
  while (!panels.empty()) {
    exact_total += panels.top().value;
    exact_error += panels.top().error;
    panels.pop();
  }
  result.value = exact_total;
  result.error = exact_error;
  return result;
}

}  // namespace mod1::quad

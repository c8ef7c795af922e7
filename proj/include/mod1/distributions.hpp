// SPDX-License-Identifier: Apache-2.0
#pragma once

/// Named circle-density families with closed-form spectra and samplers:
///  - the box family phi_m (height m on |x - 1/8| <= 1/(2m)),
///  - raised cosines 1 + a cos(2 pi (x - c)),
///  - the modified Pareto law f_alpha(x) = alpha / (x ln^{alpha+1} x), x >= e,
///    whose logarithm has infinite variance for alpha <= 2,
/// plus the mantissa pushforward of a density on (0, inf).
///
/// Samplers take their uniform variate explicitly; randomness lives in the
/// Monte Carlo layer.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mod1/benford.hpp"
#include "mod1/circle.hpp"
#include "mod1/density.hpp"
#include "mod1/error.hpp"
#include "mod1/quadrature.hpp"

namespace mod1 {

inline constexpr double kBoxCenter = 0.125;

// ---------------------------------------------------------------------------
// Box family

/// phi_m^(n) = e^{-2 pi i n/8} sinc(pi n / m). m = +inf gives the point mass
/// at 1/8.
inline Complex box_spectrum_coefficient(double m, long n) {
  if (!(m >= 1.0)) throw DomainError("box height m must be at least 1");
  const double nd = static_cast<double>(n);
  // zeros of sinc at nonzero multiples of m, exactly
  if (n != 0 && std::isfinite(m) && std::fmod(nd, m) == 0.0) return Complex(0.0, 0.0);
  return turn(-nd * kBoxCenter) * sinc(kPi * nd / m);
}

/// phi_m as a circle density. When the support edges 1/8 +- 1/(2m) collapse
/// to the same double the box is returned as the point mass at 1/8, its
/// limit; the sampler degrades the same way.
inline CircleDensity box_density(double m) {
  if (!(m >= 1.0)) throw DomainError("box height m must be at least 1");
  const double lo = kBoxCenter - 0.5 / m;
  const double hi = kBoxCenter + 0.5 / m;
  std::ostringstream label;
  label << "box(" << m << ")";
  if (!(hi > lo)) return CircleDensity::atomic({{kBoxCenter, 1.0}}, label.str());

  // Height from the rounded width so the pointwise density has unit mass
  // between its breakpoints even for very narrow boxes.
  const double height = 1.0 / (hi - lo);
  const double lo_r = reduce(lo);
  const double hi_r = reduce(hi);
  const bool wraps = lo < 0.0 || hi >= 1.0;
  auto evaluate = [=](double x) {
    const bool inside = wraps ? (x >= lo_r || x <= hi_r) : (x >= lo && x <= hi);
    return inside ? height : 0.0;
  };
  std::vector<double> breakpoints;
  if (!(wraps && lo_r == hi_r)) breakpoints = {lo_r, hi_r};
  return CircleDensity::continuous(evaluate, std::move(breakpoints),
                                   [m](long n) { return box_spectrum_coefficient(m, n); }, label.str());
}

/// Log mantissa drawn from phi_m: (1/8 + (u - 1/2)/m) mod 1. For m past
/// double resolution the jitter vanishes and the result is exactly 1/8.
inline double sample_box_log_mantissa(double m, double u) {
  if (!(m >= 1.0)) throw DomainError("box height m must be at least 1");
  return reduce(kBoxCenter + (u - 0.5) / m);
}

// ---------------------------------------------------------------------------
// Raised cosine

inline CircleDensity raised_cosine_density(double a, double c) {
  if (!(std::abs(a) <= 1.0)) throw DomainError("raised cosine amplitude must satisfy |a| <= 1");
  std::ostringstream label;
  label << "cosine(a=" << a << ",c=" << c << ")";
  return CircleDensity::continuous(
      [=](double x) { return 1.0 + a * std::cos(kTwoPi * (x - c)); }, {},
      [=](long n) {
        if (n == 0) return Complex(1.0);
        if (n == 1) return 0.5 * a * turn(-c);
        if (n == -1) return 0.5 * a * turn(c);
        return Complex(0.0);
      },
      label.str());
}

/// Inverse CDF of the raised cosine by bracketed Newton iteration.
inline double sample_raised_cosine(double a, double c, double u) {
  auto cdf = [=](double x) { return x + a / kTwoPi * (std::sin(kTwoPi * (x - c)) + std::sin(kTwoPi * c)); };
  double lo = 0.0, hi = 1.0, x = u;
  for (int it = 0; it < 100; ++it) {
    const double f = cdf(x) - u;
    if (f == 0.0) break;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    const double slope = 1.0 + a * std::cos(kTwoPi * (x - c));
    double next = slope > 1e-12 ? x - f / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16) {
      x = next;
      break;
    }
    x = next;
  }
  return reduce(x);
}

// ---------------------------------------------------------------------------
// Modified Pareto

struct SeriesValue {
  double value;
  double tail_bound;
};

inline void require_positive_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("Pareto index alpha must be positive");
}

// Forward-error bound for a sum of `terms` positive terms, each carrying a
// few ulps from pow/expm1.
inline double series_rounding(long terms, double sum) {
  return (static_cast<double>(terms) + 8.0) * std::numeric_limits<double>::epsilon() * std::abs(sum);
}

inline void require_summable_alpha(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw DomainError("mantissa series for the modified Pareto law need alpha > 1");
}

/// f_alpha(x) = alpha / (x ln^{alpha+1} x) for x >= e, 0 below.
inline double pareto_density(double alpha, double x) {
  require_positive_alpha(alpha);
  if (!(x >= std::numbers::e)) return 0.0;
  const double lx = std::log(x);
  return alpha / (x * std::pow(lx, alpha + 1.0));
}

/// Density of Y = ln X: alpha y^{-(alpha+1)} on y >= 1.
inline double pareto_log_density(double alpha, double y) {
  require_positive_alpha(alpha);
  return y >= 1.0 ? alpha * std::pow(y, -(alpha + 1.0)) : 0.0;
}

inline double pareto_cdf(double alpha, double x) {
  require_positive_alpha(alpha);
  if (!(x >= std::numbers::e)) return 0.0;
  return 1.0 - std::pow(std::log(x), -alpha);
}

/// Inverse CDF: x = exp((1 - u)^{-1/alpha}).
inline double sample_pareto(double alpha, double u) {
  require_positive_alpha(alpha);
  if (!(u > 0.0 && u < 1.0)) throw DomainError("sample_pareto needs u in (0, 1)");
  return std::exp(std::pow(1.0 - u, -1.0 / alpha));
}

/// log_B mantissa of a Pareto draw, computed from ln X directly so that
/// heavy-tailed draws never overflow.
inline double sample_pareto_log_mantissa(double alpha, const Base& base, double u) {
  require_positive_alpha(alpha);
  if (!(u > 0.0 && u < 1.0)) throw DomainError("sample_pareto needs u in (0, 1)");
  return reduce(std::pow(1.0 - u, -1.0 / alpha) / base.log());
}

/// f_{e,alpha}(s) = alpha sum_{m>=1} 1 / (s ln^{alpha+1}(s e^m)), s in [1, e].
/// Tail beyond `terms` is bounded by terms^{-alpha} / s (integral test); the
/// reported bound also covers rounding in the partial sum.
inline SeriesValue pareto_mantissa_density(double alpha, double s, long terms) {
  require_summable_alpha(alpha);
  if (!(s >= 1.0 && s <= std::numbers::e)) throw DomainError("mantissa density needs s in [1, e]");
  if (terms < 1) throw DomainError("series needs at least one term");
  const double t = std::log(s);
  double sum = 0.0;
  for (long m = terms; m >= 1; --m) sum += std::pow(static_cast<double>(m) + t, -(alpha + 1.0));
  const double value = alpha * sum / s;
  return {value, std::pow(static_cast<double>(terms), -alpha) / s + series_rounding(terms, value)};
}

/// F_{e,alpha}(s) = sum_{m>=1} [m^{-alpha} - (m + ln s)^{-alpha}], s in [1, e].
/// The tail telescopes: it is at most (terms + 1)^{-alpha}, with equality at
/// s = e, so the reported bound adds the rounding of the partial sum.
inline SeriesValue pareto_mantissa_cdf(double alpha, double s, long terms) {
  require_summable_alpha(alpha);
  if (!(s >= 1.0 && s <= std::numbers::e)) throw DomainError("mantissa CDF needs s in [1, e]");
  if (terms < 1) throw DomainError("series needs at least one term");
  const double t = std::log(s);
  double sum = 0.0;
  for (long m = terms; m >= 1; --m) {
    const double md = static_cast<double>(m);
    // m^{-a} - (m+t)^{-a} without cancellation
    sum += -std::pow(md, -alpha) * std::expm1(-alpha * std::log1p(t / md));
  }
  return {sum, std::pow(static_cast<double>(terms) + 1.0, -alpha) + series_rounding(terms, sum)};
}

/// Circle density of log_B X mod 1 for X ~ f_alpha. With L = ln B and
/// Z = ln X / L >= 1/L,
///   h(t) = sum_{k : k + t >= 1/L} alpha L^{-alpha} (k + t)^{-(alpha+1)},
/// summed for `terms` terms with a midpoint-integral tail correction.
inline CircleDensity pareto_log_mantissa_density(double alpha, const Base& base, long terms = 400) {
  require_positive_alpha(alpha);
  const double lbase = base.log();
  const double z0 = 1.0 / lbase;
  const double scale = alpha * std::pow(lbase, -alpha);
  const double tail_scale = std::pow(lbase, -alpha);
  auto evaluate = [=](double t) {
    const double kmin = std::ceil(z0 - t);
    double sum = 0.0;
    for (long j = terms - 1; j >= 0; --j) sum += std::pow(kmin + static_cast<double>(j) + t, -(alpha + 1.0));
    const double k_end = kmin + static_cast<double>(terms);
    return scale * sum + tail_scale * std::pow(k_end - 0.5 + t, -alpha);
  };
  std::ostringstream label;
  label << "pareto(alpha=" << alpha << ",base=" << base.name() << ")";
  return CircleDensity::continuous(evaluate, {reduce(z0)}, {}, label.str());
}

// ---------------------------------------------------------------------------
// Mantissa pushforward

/// A law on (0, inf) described through U = ln X, which keeps heavy tails
/// representable: density of U on [log_lo, log_hi] and, when known, its CDF.
struct PositiveLaw {
  std::function<double(double)> log_density;
  double log_lo = -std::numeric_limits<double>::infinity();
  double log_hi = std::numeric_limits<double>::infinity();
  std::vector<double> log_breakpoints;
  std::function<double(double)> log_cdf;
  std::string label = "law";

  /// From a density f on (0, inf) supported on [x_lo, x_hi].
  static PositiveLaw from_pdf(std::function<double(double)> pdf, double x_lo, double x_hi,
                              std::vector<double> x_breakpoints = {}, std::function<double(double)> cdf = {},
                              std::string label = "law") {
    if (!(x_lo >= 0.0 && x_hi > x_lo)) throw DomainError("support must be an interval of (0, inf)");
    PositiveLaw law;
    law.log_density = [pdf](double u) {
      const double x = std::exp(u);
      return pdf(x) * x;
    };
    law.log_lo = x_lo > 0.0 ? std::log(x_lo) : -std::numeric_limits<double>::infinity();
    law.log_hi = std::log(x_hi);
    for (double b : x_breakpoints)
      if (b > 0.0) law.log_breakpoints.push_back(std::log(b));
    if (cdf) law.log_cdf = [cdf](double u) { return cdf(std::exp(u)); };
    law.label = std::move(label);
    return law;
  }
};

inline PositiveLaw pareto_positive_law(double alpha) {
  require_positive_alpha(alpha);
  PositiveLaw law;
  law.log_density = [alpha](double u) { return pareto_log_density(alpha, u); };
  law.log_lo = 1.0;
  law.log_cdf = [alpha](double u) { return u <= 1.0 ? 0.0 : 1.0 - std::pow(u, -alpha); };
  law.label = "pareto";
  return law;
}

/// P(first digit in [1, s)) = sum_m int_{B^m}^{s B^m} f, truncated to
/// |m| <= m_range. Returns the value and the mass outside the window, which
/// must not exceed `mass_tolerance`.
inline SeriesValue mantissa_pushforward_cdf(const PositiveLaw& law, double s, const Base& base, long m_range,
                                            double mass_tolerance = 1e-10) {
  if (!law.log_density) throw UsageError("pushforward needs a log density");
  if (!(s >= 1.0 && s <= base.value())) throw DomainError("pushforward CDF needs s in [1, B]");
  if (m_range < 0) throw DomainError("m_range must be non-negative");
  const double lb = base.log();
  const double window_lo = -static_cast<double>(m_range) * lb;
  const double window_hi = static_cast<double>(m_range + 1) * lb;

  auto mass_between = [&](double a, double b) {
    a = std::max(a, law.log_lo);
    b = std::min(b, law.log_hi);
    if (!(a < b)) return 0.0;
    if (law.log_cdf) return law.log_cdf(b) - law.log_cdf(a);
    if (!std::isfinite(a) || !std::isfinite(b))
      throw RangeError("law '" + law.label + "' has unbounded support and no CDF; tail mass cannot be certified");
    return quad::integrate(law.log_density, a, b, law.log_breakpoints).value;
  };
  const double outside = mass_between(-std::numeric_limits<double>::infinity(), window_lo) +
                         mass_between(window_hi, std::numeric_limits<double>::infinity());
  if (outside > mass_tolerance) {
    std::ostringstream msg;
    msg << "mass " << outside << " of '" << law.label << "' lies outside |m| <= " << m_range
        << "; increase m_range";
    throw RangeError(msg.str());
  }

  quad::Options options;
  options.abs_tol = std::max(1e-13, 1e-10 / static_cast<double>(2 * m_range + 1));
  const double ls = std::log(s);
  double total = 0.0;
  for (long m = -m_range; m <= m_range; ++m) {
    const double a = std::max(static_cast<double>(m) * lb, law.log_lo);
    const double b = std::min(static_cast<double>(m) * lb + ls, law.log_hi);
    if (a < b) total += quad::integrate(law.log_density, a, b, law.log_breakpoints, options).value;
  }
  return {total, outside};
}

// ---------------------------------------------------------------------------
// Log-mantissa laws: a circle density paired with its sampler.

struct LogMantissaLaw {
  CircleDensity density;
  /// Maps u in (0, 1) to a point of [0, 1) distributed by `density`.
  std::function<double(double)> sample;
};

inline LogMantissaLaw uniform_law() {
  return {CircleDensity::uniform(), [](double u) { return reduce(u); }};
}

inline LogMantissaLaw box_law(double m) {
  return {box_density(m), [m](double u) { return sample_box_log_mantissa(m, u); }};
}

inline LogMantissaLaw raised_cosine_law(double a, double c) {
  return {raised_cosine_density(a, c), [a, c](double u) { return sample_raised_cosine(a, c, u); }};
}

/// Categorical draw over the atoms by cumulative weight.
inline LogMantissaLaw atoms_law(CircleDensity atoms) {
  if (!atoms.is_atomic()) throw UsageError("atoms_law needs an atomic density");
  std::vector<double> cumulative;
  std::vector<double> locations;
  double acc = 0.0;
  for (const Atom& a : atoms.atoms()) {
    acc += a.weight;
    cumulative.push_back(acc);
    locations.push_back(a.location);
  }
  return {std::move(atoms), [cumulative, locations](double u) {
            const double target = u * cumulative.back();
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
            const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                                                         locations.size() - 1);
            return locations[i];
          }};
}

inline LogMantissaLaw pareto_law(double alpha, const Base& base) {
  return {pareto_log_mantissa_density(alpha, base),
          [alpha, base](double u) { return sample_pareto_log_mantissa(alpha, base, u); }};
}

}  // namespace mod1

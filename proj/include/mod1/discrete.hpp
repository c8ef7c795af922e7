// SPDX-License-Identifier: Apache-2.0
#pragma once

/// Point masses on the circle. L^1 convergence is meaningless for atoms, so
/// convergence is tested weakly, against trigonometric polynomials, and the
/// atoms must come from a declared finite set.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "mod1/circle.hpp"
#include "mod1/convolution.hpp"
#include "mod1/density.hpp"
#include "mod1/error.hpp"

namespace mod1 {

/// Fejer series of the unit mass at alpha,
///   F_N delta_alpha(x) = e^{-2 pi i (N-1) u} (e^{2 pi i N u} - 1)^2 / ((e^{2 pi i u} - 1)^2 N),
/// with u = x - alpha. Returns N at the removable singularity.
inline double fejer_delta(double alpha, long big_n, double x) {
  if (big_n < 1) throw DomainError("Fejer order must be at least 1");
  const double u = reduce(x - alpha);
  if (u == 0.0) return static_cast<double>(big_n);
  const double nn = static_cast<double>(big_n);
  // e^{i t} - 1 = -2 sin^2(t/2) + i sin t, accurate for small t
  auto expm1i = [](double t) {
    const double h = std::sin(0.5 * t);
    return Complex(-2.0 * h * h, std::sin(t));
  };
  const Complex top = expm1i(kTwoPi * nn * u);
  const Complex bottom = expm1i(kTwoPi * u);
  const Complex value = turn(-(nn - 1.0) * u) * (top * top) / (bottom * bottom * nn);
  return value.real();
}

/// sum_n h^(n) conj(phi^(n)): the pairing int h conj(phi) of a measure with a
/// trigonometric polynomial given by its coefficients.
inline Complex weak_pairing(const Spectrum& s, const Spectrum& test_function) {
  if (s.truncation() != test_function.truncation())
    throw ShapeError("weak pairing needs equal truncations");
  Complex sum{0.0, 0.0};
  for (long n = -s.truncation(); n <= s.truncation(); ++n) sum += s[n] * std::conj(test_function[n]);
  return sum;
}

/// Coefficients of the monomial e^{2 pi i k x} in a truncation-N table.
inline Spectrum trig_monomial(long truncation, long k) {
  if (std::labs(k) > truncation) throw DomainError("monomial frequency exceeds the truncation");
  std::vector<Complex> table(static_cast<std::size_t>(2 * truncation + 1), Complex(0.0));
  table[static_cast<std::size_t>(k + truncation)] = 1.0;
  return Spectrum::from_table(truncation, std::move(table));
}

/// Support contained in {offset + j/order : j = 0..order-1} (mod 1).
struct Coset {
  double offset;
  long order;
};

/// Smallest order q <= max_order such that every atom lies on the coset of
/// (1/q)Z through the smallest atom, within `tolerance`.
inline std::optional<Coset> detect_coset(std::span<const double> atoms, long max_order = 1024,
                                         double tolerance = 1e-9) {
  if (atoms.empty()) throw DomainError("coset detection needs at least one atom");
  std::vector<double> reduced;
  for (double a : atoms) reduced.push_back(reduce(a));
  const double offset = *std::min_element(reduced.begin(), reduced.end());
  for (long q = 1; q <= max_order; ++q) {
    const double qd = static_cast<double>(q);
    bool on_lattice = true;
    for (double a : reduced) {
      const double d = a - offset;
      // distance on the circle from d to the nearest multiple of 1/q
      const double steps = d * qd;
      const double off = std::abs(steps - std::round(steps)) / qd;
      if (off > tolerance) {
        on_lattice = false;
        break;
      }
    }
    if (on_lattice) return Coset{offset, q};
  }
  return std::nullopt;
}

/// Exact coset for rational atoms: the order is the lcm of the reduced
/// denominators of the offsets from the smallest atom.
inline Coset detect_coset_exact(std::span<const Rational> atoms) {
  if (atoms.empty()) throw DomainError("coset detection needs at least one atom");
  auto normalized = [](Rational r) {
    if (r.q <= 0) throw DomainError("rational location needs a positive denominator");
    r.p = ((r.p % r.q) + r.q) % r.q;
    const long long g = std::gcd(r.p, r.q);
    return g > 1 ? Rational{r.p / g, r.q / g} : r;
  };
  std::vector<Rational> rs;
  for (const Rational& r : atoms) rs.push_back(normalized(r));
  const Rational base = *std::min_element(rs.begin(), rs.end(), [](const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.p) * b.q < static_cast<__int128>(b.p) * a.q;
  });
  long long order = 1;
  for (const Rational& r : rs) {
    // r - base = (r.p base.q - base.p r.q) / (r.q base.q)
    const long long num = r.p * base.q - base.p * r.q;
    const long long den = r.q * base.q;
    const Rational diff = normalized({num, den});
    order = std::lcm(order, diff.q);
  }
  return Coset{base.value(), static_cast<long>(order)};
}

struct AtomSupportReport {
  /// Distinct atom locations over the first M factors, sorted.
  std::vector<double> support_set;
  std::optional<Coset> coset;
};

inline AtomSupportReport atom_support_report(const DensitySequence& seq, std::size_t factors,
                                             long max_order = 1024) {
  AtomSupportReport report;
  for (std::size_t m = 1; m <= factors; ++m) {
    CircleDensity d = seq.at(m);
    if (!d.is_atomic()) throw UsageError("support report needs atomic factors");
    for (const Atom& a : d.atoms()) report.support_set.push_back(a.location);
    if (seq.identical()) break;
  }
  std::sort(report.support_set.begin(), report.support_set.end());
  report.support_set.erase(std::unique(report.support_set.begin(), report.support_set.end(),
                                       [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
                           report.support_set.end());
  report.coset = detect_coset(report.support_set, max_order);
  return report;
}

/// Coefficient-product verdict for atomic factors whose atoms all lie in the
/// declared finite set A, cross-checked against weak pairings with
/// e^{2 pi i n x}, 1 <= n <= N.
inline ConvergenceVerdict discrete_convergence_verdict(const DensitySequence& seq,
                                                       std::span<const double> declared_support,
                                                       const VerdictOptions& options = {}) {
  if (declared_support.empty()) throw HypothesisViolation("declared atom set A must be nonempty and finite");
  std::vector<double> allowed;
  for (double a : declared_support) allowed.push_back(reduce(a));
  const std::size_t checked = seq.identical() ? 1 : options.horizon;
  for (std::size_t m = 1; m <= checked; ++m) {
    CircleDensity d = seq.at(m);
    if (!d.is_atomic())
      throw HypothesisViolation("factor " + std::to_string(m) + " is not a finite sum of point masses");
    for (const Atom& a : d.atoms()) {
      const bool known = std::any_of(allowed.begin(), allowed.end(), [&](double b) {
        const double gap = std::abs(a.location - b);
        return std::min(gap, 1.0 - gap) <= 1e-12;
      });
      if (!known) {
        std::ostringstream msg;
        msg << "factor " << m << " has an atom at " << a.location << " outside the declared set A";
        throw HypothesisViolation(msg.str());
      }
    }
  }

  ConvergenceVerdict v = convergence_verdict(seq, options);
  if (v.converges()) {
    for (long n = 1; n <= options.max_n; ++n) {
      const double pairing = std::abs(weak_pairing(v.final_spectrum, trig_monomial(options.max_n, n)));
      if (!(pairing < options.threshold))
        throw ConsistencyError("weak pairing with e^{2 pi i " + std::to_string(n) +
                               " x} does not vanish although the products do");
    }
  }
  return v;
}

}  // namespace mod1

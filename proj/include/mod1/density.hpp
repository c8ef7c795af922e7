// SPDX-License-Identifier: Apache-2.0
#pragma once

/// Probability densities on the circle [0, 1), their Fourier coefficients
///   g^(n) = int_0^1 g(x) e^{-2 pi i n x} dx,
/// Fejer means, and reflection x -> -x (mod 1).

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mod1/circle.hpp"
#include "mod1/error.hpp"
#include "mod1/quadrature.hpp"

namespace mod1 {

inline constexpr double kCoefficientTolerance = 1e-10;
inline constexpr double kSymmetryTolerance = 1e-8;
inline constexpr double kNormalizationTolerance = 1e-8;

enum class DensityKind { Continuous, Atomic };

struct Atom {
  double location;
  double weight;
};

/// Exact location p/q on the circle, used for coset detection without
/// floating-point tolerance.
struct Rational {
  long long p;
  long long q;

  double value() const { return reduce(static_cast<double>(p) / static_cast<double>(q)); }
};

using DensityFn = std::function<double(double)>;
using CoefficientFn = std::function<Complex(long)>;

/// A probability density on [0, 1): either an evaluable function with
/// declared discontinuities, or a finite list of point masses.
/// Immutable once built.
class CircleDensity {
 public:
  /// Continuous density. Without a closed-form coefficient the total mass is
  /// checked by quadrature; with one, coefficient(0) must equal 1.
  static CircleDensity continuous(DensityFn evaluate, std::vector<double> breakpoints = {},
                                  CoefficientFn analytic = {}, std::string label = "continuous") {
    if (!evaluate) throw UsageError("continuous density needs an evaluation function");
    CircleDensity d;
    d.kind_ = DensityKind::Continuous;
    d.evaluate_ = std::move(evaluate);
    for (double& b : breakpoints) b = reduce(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    d.breakpoints_ = std::move(breakpoints);
    d.analytic_ = std::move(analytic);
    d.label_ = std::move(label);

    if (d.analytic_) {
      Complex c0 = d.analytic_(0);
      if (std::abs(c0 - 1.0) > kCoefficientTolerance)
        throw DomainError("density '" + d.label_ + "' has closed-form mass " + std::to_string(c0.real()));
    } else {
      quad::Options options;
      options.abs_tol = kNormalizationTolerance;
      auto mass = quad::integrate([&](double x) { return d.evaluate_(x); }, 0.0, 1.0, d.breakpoints_, options);
      if (std::abs(mass.value - 1.0) > kNormalizationTolerance)
        throw DomainError("density '" + d.label_ + "' integrates to " + std::to_string(mass.value));
    }
    return d;
  }

  /// Point masses. Locations are reduced mod 1; weights must be positive and
  /// sum to one.
  static CircleDensity atomic(std::vector<Atom> atoms, std::string label = "atoms") {
    if (atoms.empty()) throw DomainError("atomic density needs at least one atom");
    double total = 0.0;
    for (Atom& a : atoms) {
      if (!(a.weight > 0.0) || !std::isfinite(a.weight))
        throw DomainError("atom weights must be strictly positive");
      if (!std::isfinite(a.location)) throw DomainError("atom location must be finite");
      a.location = reduce(a.location);
      total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw DomainError("atom weights sum to " + std::to_string(total) + ", not 1");
    CircleDensity d;
    d.kind_ = DensityKind::Atomic;
    d.atoms_ = std::move(atoms);
    d.label_ = std::move(label);
    return d;
  }

  /// Point masses at exact rational locations.
  static CircleDensity atomic(std::span<const Rational> locations, std::span<const double> weights,
                              std::string label = "atoms") {
    if (locations.size() != weights.size()) throw ShapeError("one weight per rational location");
    std::vector<Atom> atoms;
    std::vector<Rational> exact;
    for (std::size_t i = 0; i < locations.size(); ++i) {
      Rational r = locations[i];
      if (r.q <= 0) throw DomainError("rational location needs a positive denominator");
      r.p = ((r.p % r.q) + r.q) % r.q;
      long long g = std::gcd(r.p, r.q);
      if (g > 1) r = {r.p / g, r.q / g};
      exact.push_back(r);
      atoms.push_back({r.value(), weights[i]});
    }
    CircleDensity d = atomic(std::move(atoms), std::move(label));
    d.exact_ = std::move(exact);
    return d;
  }

  static CircleDensity uniform() {
    return continuous([](double) { return 1.0; }, {}, [](long n) { return n == 0 ? Complex(1.0) : Complex(0.0); },
                      "uniform");
  }

  static CircleDensity point_mass(double alpha) {
    std::ostringstream label;
    label << "delta(" << reduce(alpha) << ")";
    return atomic({{alpha, 1.0}}, label.str());
  }

  DensityKind kind() const { return kind_; }
  bool is_atomic() const { return kind_ == DensityKind::Atomic; }
  const std::string& label() const { return label_; }

  double evaluate(double x) const {
    if (is_atomic()) throw UsageError("point masses have no pointwise density");
    return evaluate_(reduce(x));
  }

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const Atom> atoms() const { return atoms_; }

  /// Exact rational locations when the density was built from them.
  std::optional<std::span<const Rational>> exact_locations() const {
    if (exact_.empty()) return std::nullopt;
    return std::span<const Rational>(exact_);
  }

  bool has_analytic_coefficient() const { return static_cast<bool>(analytic_); }

  std::optional<Complex> analytic_coefficient(long n) const {
    if (!analytic_) return std::nullopt;
    return analytic_(n);
  }

 private:
  CircleDensity() = default;

  DensityKind kind_ = DensityKind::Continuous;
  DensityFn evaluate_;
  std::vector<double> breakpoints_;
  CoefficientFn analytic_;
  std::vector<Atom> atoms_;
  std::vector<Rational> exact_;
  std::string label_;
};

/// Fourier coefficients g^(n) for n in [-N, N].
class Spectrum {
 public:
  /// Builds the table from n = 0..N and fills negative n by conjugation.
  static Spectrum from_nonnegative(std::vector<Complex> nonnegative) {
    if (nonnegative.size() < 2) throw DomainError("spectrum truncation must be at least 1");
    const long n_max = static_cast<long>(nonnegative.size()) - 1;
    std::vector<Complex> all(2 * nonnegative.size() - 1);
    for (long n = 0; n <= n_max; ++n) {
      all[static_cast<std::size_t>(n_max + n)] = nonnegative[static_cast<std::size_t>(n)];
      all[static_cast<std::size_t>(n_max - n)] = std::conj(nonnegative[static_cast<std::size_t>(n)]);
    }
    all[static_cast<std::size_t>(n_max)] = nonnegative[0];
    return Spectrum(n_max, std::move(all));
  }

  /// Full table, index 0 holding n = -N.
  static Spectrum from_table(long truncation, std::vector<Complex> table) {
    if (truncation < 1) throw DomainError("spectrum truncation must be at least 1");
    if (table.size() != static_cast<std::size_t>(2 * truncation + 1))
      throw ShapeError("spectrum table has the wrong length for its truncation");
    return Spectrum(truncation, std::move(table));
  }

  static Spectrum uniform(long truncation) {
    std::vector<Complex> c(static_cast<std::size_t>(truncation + 1), Complex(0.0));
    c[0] = 1.0;
    return from_nonnegative(std::move(c));
  }

  long truncation() const { return truncation_; }

  Complex operator[](long n) const { return table_[static_cast<std::size_t>(n + truncation_)]; }

  Complex at(long n) const {
    if (n < -truncation_ || n > truncation_) throw DomainError("frequency outside the spectrum truncation");
    return (*this)[n];
  }

  std::span<const Complex> table() const { return table_; }

 private:
  Spectrum(long truncation, std::vector<Complex> table) : truncation_(truncation), table_(std::move(table)) {}

  long truncation_;
  std::vector<Complex> table_;
};

/// g^(n). Closed form when the density carries one, the atom sum for point
/// masses, adaptive quadrature otherwise.
inline Complex fourier_coefficient(const CircleDensity& d, long n) {
  if (d.is_atomic()) {
    Complex sum{0.0, 0.0};
    for (const Atom& a : d.atoms()) sum += a.weight * turn(-static_cast<double>(n) * a.location);
    return sum;
  }
  if (auto c = d.analytic_coefficient(n)) return *c;
  if (n == 0) {
    auto r = quad::integrate([&](double x) { return d.evaluate(x); }, 0.0, 1.0, d.breakpoints());
    return r.value;
  }
  quad::Options options;
  options.abs_tol = kCoefficientTolerance;
  options.initial_pieces = static_cast<std::size_t>(std::min(std::labs(n), 4096L));
  const double freq = -static_cast<double>(n);
  auto r = quad::integrate([&](double x) { return d.evaluate(x) * turn(freq * x); }, 0.0, 1.0,
                           d.breakpoints(), options);
  return r.value;
}

/// g^(n) for |n| <= N, computing n >= 0 only.
inline Spectrum spectrum(const CircleDensity& d, long truncation) {
  if (truncation < 1) throw DomainError("spectrum truncation must be at least 1");
  std::vector<Complex> c(static_cast<std::size_t>(truncation + 1));
  for (long n = 0; n <= truncation; ++n) {
    try {
      c[static_cast<std::size_t>(n)] = fourier_coefficient(d, n);
    } catch (const NumericalFailure& e) {
      throw NumericalFailure("coefficient n=" + std::to_string(n) + " of '" + d.label() + "': " + e.what(),
                             e.error_estimate());
    }
  }
  return Spectrum::from_nonnegative(std::move(c));
}

/// T_N g(x) = sum_{|n| <= N} (1 - |n|/N) g^(n) e^{2 pi i n x}.
inline double fejer_mean(const Spectrum& s, double x) {
  const long big_n = s.truncation();
  const double nn = static_cast<double>(big_n);
  Complex sum = s[0];
  for (long n = 1; n < big_n; ++n) {
    const double w = 1.0 - static_cast<double>(n) / nn;
    const Complex e = turn(static_cast<double>(n) * x);
    sum += w * (s[n] * e + s[-n] * std::conj(e));
  }
  if (std::abs(sum.imag()) >= kSymmetryTolerance) {
    std::ostringstream msg;
    msg << "Fejer mean has imaginary part " << sum.imag() << " at x=" << x
        << "; spectrum is not conjugate-symmetric";
    throw ConsistencyError(msg.str());
  }
  return sum.real();
}

/// Fejer mean sampled at x_k = k / grid_size, k = 0..grid_size-1.
inline std::vector<double> fejer_mean_grid(const Spectrum& s, std::size_t grid_size) {
  std::vector<double> out(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k)
    out[k] = fejer_mean(s, static_cast<double>(k) / static_cast<double>(grid_size));
  return out;
}

/// Density of -Y mod 1 when Y has density d.
inline CircleDensity reflect(const CircleDensity& d) {
  const std::string label = "reflect(" + d.label() + ")";
  if (d.is_atomic()) {
    if (auto exact = d.exact_locations()) {
      std::vector<Rational> flipped;
      std::vector<double> weights;
      for (std::size_t i = 0; i < exact->size(); ++i) {
        const Rational& r = (*exact)[i];
        flipped.push_back({r.q - r.p, r.q});
        weights.push_back(d.atoms()[i].weight);
      }
      return CircleDensity::atomic(flipped, weights, label);
    }
    std::vector<Atom> flipped;
    for (const Atom& a : d.atoms()) flipped.push_back({reduce(1.0 - a.location), a.weight});
    return CircleDensity::atomic(std::move(flipped), label);
  }
  std::vector<double> breakpoints;
  for (double b : d.breakpoints()) breakpoints.push_back(reduce(1.0 - b));
  CoefficientFn analytic;
  if (d.has_analytic_coefficient())
    analytic = [d](long n) { return std::conj(*d.analytic_coefficient(n)); };
  return CircleDensity::continuous([d](double x) { return d.evaluate(1.0 - x); }, std::move(breakpoints),
                                   std::move(analytic), label);
}

}  // namespace mod1

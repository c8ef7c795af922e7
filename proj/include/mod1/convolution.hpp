// SPDX-License-Identifier: Apache-2.0
#pragma once

/// Sums of independent circle variables: the n-th coefficient of
/// g_1 * ... * g_M is the product of the factors' n-th coefficients. The sum
/// tends to the uniform law in L^1 exactly when every product with n != 0
/// tends to zero; finite horizons give a three-state verdict.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mod1/density.hpp"
#include "mod1/error.hpp"

namespace mod1 {

/// Factor list g_1, g_2, ... (1-based), possibly generated lazily.
class DensitySequence {
 public:
  using Generator = std::function<CircleDensity(std::size_t)>;

  /// The same density for every index.
  static DensitySequence repeated(CircleDensity d) {
    DensitySequence s;
    s.label_ = d.label() + " repeated";
    s.identical_ = std::make_shared<CircleDensity>(std::move(d));
    return s;
  }

  /// g_m = generator(m), m >= 1.
  static DensitySequence indexed(Generator generator, std::string label) {
    DensitySequence s;
    s.generator_ = std::move(generator);
    s.label_ = std::move(label);
    return s;
  }

  /// Finite list; indices past the end are an error.
  static DensitySequence from_list(std::vector<CircleDensity> factors, std::string label = "list") {
    if (factors.empty()) throw DomainError("density list must not be empty");
    auto shared = std::make_shared<const std::vector<CircleDensity>>(std::move(factors));
    DensitySequence s;
    s.length_ = shared->size();
    s.generator_ = [shared](std::size_t m) { return (*shared)[m - 1]; };
    s.label_ = std::move(label);
    return s;
  }

  CircleDensity at(std::size_t m) const {
    if (m == 0) throw DomainError("density sequences are indexed from 1");
    if (length_ && m > *length_)
      throw DomainError("sequence '" + label_ + "' has only " + std::to_string(*length_) + " factors");
    if (identical_) return *identical_;
    return generator_(m);
  }

  bool identical() const { return static_cast<bool>(identical_); }
  std::optional<std::size_t> length() const { return length_; }
  const std::string& label() const { return label_; }

 private:
  DensitySequence() = default;

  std::shared_ptr<const CircleDensity> identical_;
  Generator generator_;
  std::optional<std::size_t> length_;
  std::string label_;
};

/// Pointwise product of two spectra with the same truncation.
inline Spectrum convolve_spectra(const Spectrum& a, const Spectrum& b) {
  if (a.truncation() != b.truncation())
    throw ShapeError("cannot convolve spectra with truncations " + std::to_string(a.truncation()) + " and " +
                     std::to_string(b.truncation()));
  std::vector<Complex> table(a.table().size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = a.table()[i] * b.table()[i];
  return Spectrum::from_table(a.truncation(), std::move(table));
}

/// Product of complex coefficients kept as log-modulus plus phase, so long
/// products of moduli below one never underflow.
struct PartialProduct {
  double log_modulus = 0.0;
  double phase = 0.0;

  void multiply(Complex c) {
    const double r = std::abs(c);
    if (r == 0.0) {
      log_modulus = -std::numeric_limits<double>::infinity();
      phase = 0.0;
      return;
    }
    log_modulus += std::log(r);
    phase = std::remainder(phase + std::arg(c), kTwoPi);
  }

  double modulus() const { return std::exp(log_modulus); }
  Complex value() const { return std::polar(modulus(), phase); }
};

/// h_M^(n) = g_1^(n) ... g_M^(n) for |n| <= N.
struct ConvolvedSpectrum {
  std::size_t factor_count = 0;
  Spectrum spectrum = Spectrum::uniform(1);
  /// log |h_M^(n)| for n = 0..N (may be -inf).
  std::vector<double> log_modulus;
  /// Optional diagnostics: modulus_history[n][m-1] = |h_m^(n)|.
  std::vector<std::vector<double>> modulus_history;
};

namespace detail {

// Folds factor spectra left to right, n = 0..N; calls observe(m, products)
// after each factor.
template <typename Observe>
std::vector<PartialProduct> fold_products(const DensitySequence& seq, std::size_t factors, long truncation,
                                          Observe&& observe) {
  if (factors < 1) throw DomainError("need at least one factor");
  if (truncation < 1) throw DomainError("spectrum truncation must be at least 1");
  std::vector<PartialProduct> products(static_cast<std::size_t>(truncation + 1));
  std::optional<Spectrum> cached;
  for (std::size_t m = 1; m <= factors; ++m) {
    const Spectrum* factor = nullptr;
    std::optional<Spectrum> fresh;
    try {
      if (seq.identical()) {
        if (!cached) cached = spectrum(seq.at(m), truncation);
        factor = &*cached;
      } else {
        fresh = spectrum(seq.at(m), truncation);
        factor = &*fresh;
      }
    } catch (const NumericalFailure& e) {
      throw NumericalFailure("factor m=" + std::to_string(m) + ": " + e.what(), e.error_estimate());
    }
    for (long n = 0; n <= truncation; ++n) products[static_cast<std::size_t>(n)].multiply((*factor)[n]);
    observe(m, products);
  }
  return products;
}

inline Spectrum to_spectrum(const std::vector<PartialProduct>& products) {
  std::vector<Complex> c;
  c.reserve(products.size());
  for (const auto& p : products) c.push_back(p.value());
  c[0] = 1.0;
  return Spectrum::from_nonnegative(std::move(c));
}

}  // namespace detail

/// Spectrum of the density of (Y_1 + ... + Y_M) mod 1.
inline ConvolvedSpectrum sum_mod1_spectrum(const DensitySequence& seq, std::size_t factors, long truncation,
                                           bool record_history = false) {
  ConvolvedSpectrum out;
  if (record_history) out.modulus_history.assign(static_cast<std::size_t>(truncation + 1), {});
  auto products = detail::fold_products(seq, factors, truncation, [&](std::size_t, const auto& current) {
    if (!record_history) return;
    for (std::size_t n = 0; n < current.size(); ++n) out.modulus_history[n].push_back(current[n].modulus());
  });
  out.factor_count = factors;
  out.spectrum = detail::to_spectrum(products);
  for (const auto& p : products) out.log_modulus.push_back(p.log_modulus);
  out.log_modulus[0] = 0.0;
  return out;
}

struct DistanceToUniform {
  /// Periodic trapezoid (grid mean) of |T_N h - 1|.
  double grid_l1;
  /// sum_{n != 0} (1 - |n|/N) |h^(n)|, an upper bound for the L^1 distance of
  /// the Fejer mean to 1.
  double fejer_bound;
};

inline double fejer_bound(const Spectrum& s) {
  const double nn = static_cast<double>(s.truncation());
  double bound = 0.0;
  for (long n = 1; n < s.truncation(); ++n)
    bound += (1.0 - static_cast<double>(n) / nn) * (std::abs(s[n]) + std::abs(s[-n]));
  return bound;
}

inline DistanceToUniform l1_distance_to_uniform(const Spectrum& s, std::size_t grid_size) {
  if (grid_size < static_cast<std::size_t>(2 * s.truncation() + 1))
    throw DomainError("grid must have at least 2N+1 points");
  double acc = 0.0;
  for (std::size_t k = 0; k < grid_size; ++k)
    acc += std::abs(fejer_mean(s, static_cast<double>(k) / static_cast<double>(grid_size)) - 1.0);
  return {acc / static_cast<double>(grid_size), fejer_bound(s)};
}

inline DistanceToUniform l1_distance_to_uniform(const ConvolvedSpectrum& cs, std::size_t grid_size) {
  return l1_distance_to_uniform(cs.spectrum, grid_size);
}

enum class VerdictState { Converges, Diverges, Indeterminate };

inline const char* to_string(VerdictState v) {
  switch (v) {
    case VerdictState::Converges: return "converges";
    case VerdictState::Diverges: return "diverges";
    case VerdictState::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

struct ConvergenceVerdict {
  VerdictState state = VerdictState::Indeterminate;
  /// Frequency with the largest surviving product; 0 when converging.
  long worst_n = 0;
  /// max over 1 <= n <= N of |h_horizon^(n)|.
  double limiting_modulus_estimate = 0.0;
  /// Fejer bound of h_horizon.
  double l1_bound = 0.0;
  std::size_t horizon = 0;
  /// Spectrum of the sum after `horizon` factors.
  Spectrum final_spectrum = Spectrum::uniform(1);

  bool converges() const { return state == VerdictState::Converges; }
};

struct VerdictOptions {
  long max_n = 64;
  std::size_t horizon = 10000;
  double threshold = 1e-6;
  /// Relative change over the last horizon/10 factors below which a product
  /// above threshold counts as settled.
  double stabilization = 1e-12;
};

/// Three-state finite-horizon test of lim_M prod_m g_m^(n) = 0 for 1 <= n <= N.
///  - every |h_horizon^(n)| < threshold          -> converges
///  - some product above threshold has settled    -> diverges (worst_n = largest settled)
///  - otherwise                                   -> indeterminate
inline ConvergenceVerdict convergence_verdict(const DensitySequence& seq, const VerdictOptions& options = {}) {
  if (options.horizon < 1) throw DomainError("horizon must be at least 1");
  if (!(options.threshold > 0.0 && options.threshold < 1.0)) throw DomainError("threshold must lie in (0, 1)");
  const std::size_t window = std::max<std::size_t>(1, options.horizon / 10);
  const std::size_t checkpoint = options.horizon > window ? options.horizon - window : 0;

  std::vector<double> earlier(static_cast<std::size_t>(options.max_n + 1), 0.0);
  auto products = detail::fold_products(seq, options.horizon, options.max_n, [&](std::size_t m, const auto& current) {
    if (m == checkpoint)
      for (std::size_t n = 0; n < current.size(); ++n) earlier[n] = current[n].log_modulus;
  });

  ConvergenceVerdict v;
  v.horizon = options.horizon;
  v.final_spectrum = detail::to_spectrum(products);
  v.l1_bound = fejer_bound(v.final_spectrum);

  const double log_threshold = std::log(options.threshold);
  long worst_settled = 0, worst_open = 0;
  double settled_max = -1.0, open_max = -1.0;
  for (long n = 1; n <= options.max_n; ++n) {
    const PartialProduct& p = products[static_cast<std::size_t>(n)];
    const double modulus = p.modulus();
    v.limiting_modulus_estimate = std::max(v.limiting_modulus_estimate, modulus);
    if (p.log_modulus < log_threshold) continue;
    // Moduli never increase, so a tiny drop over the last window means the
    // product has settled at a nonzero value.
    const double drop = earlier[static_cast<std::size_t>(n)] - p.log_modulus;
    const bool settled = std::abs(drop) < options.stabilization;
    if (settled && modulus > settled_max) {
      settled_max = modulus;
      worst_settled = n;
    } else if (!settled && modulus > open_max) {
      open_max = modulus;
      worst_open = n;
    }
  }
  if (worst_settled != 0) {
    v.state = VerdictState::Diverges;
    v.worst_n = worst_settled;
  } else if (worst_open != 0) {
    v.state = VerdictState::Indeterminate;
    v.worst_n = worst_open;
  } else {
    v.state = VerdictState::Converges;
    v.worst_n = 0;
  }
  return v;
}

inline ConvergenceVerdict convergence_verdict(const DensitySequence& seq, long max_n, std::size_t horizon,
                                              double threshold = 1e-6) {
  VerdictOptions options;
  options.max_n = max_n;
  options.horizon = horizon;
  options.threshold = threshold;
  return convergence_verdict(seq, options);
}

/// prod_{m=1}^{M} (m^2 + 2m) / (m+1)^2, which telescopes to (M+2) / (2(M+1))
/// and tends to 1/2.
inline double telescoping_floor_check(std::size_t factors) {
  if (factors < 1) throw DomainError("need at least one factor");
  double product = 1.0;
  for (std::size_t m = 1; m <= factors; ++m) {
    const double md = static_cast<double>(m);
    product *= md * (md + 2.0) / ((md + 1.0) * (md + 1.0));
  }
  return product;
}

}  // namespace mod1

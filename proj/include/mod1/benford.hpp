// SPDX-License-Identifier: Apache-2.0
#pragma once

/// Mantissas, first digits and Benford's law in base B. A base may be an
/// integer >= 2 or Euler's number; for base e the digits are 1 and 2 and the
/// last digit interval is [2, e).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "mod1/density.hpp"
#include "mod1/error.hpp"
#include "mod1/quadrature.hpp"

namespace mod1 {

class Base {
 public:
  static Base integer(int b) {
    if (b < 2) throw DomainError("base must be at least 2");
    return Base(static_cast<double>(b), std::log(static_cast<double>(b)), false);
  }

  static Base euler() { return Base(std::numbers::e, 1.0, true); }

  /// "euler" or "e" for Euler's number, otherwise a decimal integer >= 2.
  static Base parse(const std::string& text) {
    if (text == "euler" || text == "e") return euler();
    std::size_t used = 0;
    int b = 0;
    try {
      b = std::stoi(text, &used);
    } catch (const std::exception&) {
      throw ConfigError("base must be an integer >= 2 or 'euler', got '" + text + "'");
    }
    if (used != text.size() || b < 2) throw ConfigError("base must be an integer >= 2 or 'euler', got '" + text + "'");
    return integer(b);
  }

  double value() const { return value_; }
  double log() const { return log_; }
  bool is_euler() const { return euler_; }

  /// Number of possible leading digits: B - 1 for integer B, 2 for e.
  int digit_count() const { return static_cast<int>(std::ceil(value_)) - 1; }

  /// Upper end of the mantissa interval belonging to digit j.
  double digit_upper(int j) const { return std::min(static_cast<double>(j + 1), value_); }

  std::string name() const { return euler_ ? "euler" : std::to_string(static_cast<int>(value_)); }

  bool operator==(const Base& other) const { return value_ == other.value_ && euler_ == other.euler_; }

 private:
  Base(double value, double log, bool euler) : value_(value), log_(log), euler_(euler) {}

  double value_;
  double log_;
  bool euler_;
};

/// M_B(x) in [1, B) with x = M_B(x) B^k.
inline double mantissa(double x, const Base& base) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("mantissa needs a finite positive argument");
  const double b = base.value();
  const int k = static_cast<int>(std::floor(std::log(x) / base.log()));
  double m;
  if (base.is_euler()) {
    m = x * std::exp(-static_cast<double>(k));
  } else if (k >= 0) {
    m = x / std::pow(b, k);
  } else {
    m = x * std::pow(b, -k);
  }
  // One corrective step each way for boundary misclassification near B^k.
  if (m >= b) m /= b;
  if (m < 1.0) m *= b;
  return m;
}

/// log_B of the mantissa, a point of the circle [0, 1).
inline double log_mantissa(double x, const Base& base) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log mantissa needs a finite positive argument");
  return reduce(std::log(x) / base.log());
}

/// Leading digit of the mantissa B^y for a circle point y.
inline int first_digit(double y, const Base& base) {
  const int d = static_cast<int>(std::floor(std::exp(y * base.log())));
  return std::clamp(d, 1, base.digit_count());
}

/// P(mantissa <= s) = log_B s under Benford's law.
inline double benford_cdf(double s, const Base& base) {
  if (!(s >= 1.0 && s <= base.value())) throw DomainError("benford_cdf needs s in [1, B]");
  if (s == base.value()) return 1.0;
  return std::log(s) / base.log();
}

enum class DigitSource { Exact, Empirical };

struct DigitDistribution {
  Base base;
  /// Entry j - 1 holds the probability of leading digit j.
  std::vector<double> probabilities;
  DigitSource source = DigitSource::Exact;
  std::uint64_t sample_count = 0;
  std::vector<std::uint64_t> counts;

  double probability(int digit) const { return probabilities.at(static_cast<std::size_t>(digit - 1)); }
};

inline DigitDistribution benford_digit_probabilities(const Base& base) {
  DigitDistribution dd{base, {}, DigitSource::Exact, 0, {}};
  for (int j = 1; j <= base.digit_count(); ++j)
    dd.probabilities.push_back((std::log(base.digit_upper(j)) - std::log(static_cast<double>(j))) / base.log());
  return dd;
}

/// Empirical distribution from digit tallies (entry j - 1 counts digit j).
inline DigitDistribution empirical_digit_distribution(const Base& base, std::vector<std::uint64_t> counts) {
  if (counts.size() != static_cast<std::size_t>(base.digit_count()))
    throw ShapeError("one count per possible leading digit");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw DomainError("empirical digit distribution needs at least one sample");
  DigitDistribution dd{base, {}, DigitSource::Empirical, total, std::move(counts)};
  for (auto c : dd.counts) dd.probabilities.push_back(static_cast<double>(c) / static_cast<double>(total));
  return dd;
}

/// Leading-digit law of B^Y when Y mod 1 has circle density d: digit j gets
/// the mass of [log_B j, log_B (j+1)).
inline DigitDistribution digit_distribution_from_circle_density(const CircleDensity& d, const Base& base) {
  DigitDistribution dd{base, {}, DigitSource::Exact, 0, {}};
  quad::Options options;
  options.abs_tol = 1e-12;
  for (int j = 1; j <= base.digit_count(); ++j) {
    const double lo = std::log(static_cast<double>(j)) / base.log();
    const double hi = j == base.digit_count() ? 1.0 : std::log(base.digit_upper(j)) / base.log();
    double p = 0.0;
    if (d.is_atomic()) {
      for (const Atom& a : d.atoms())
        if (a.location >= lo && a.location < hi) p += a.weight;
    } else {
      p = quad::integrate([&](double x) { return d.evaluate(x); }, lo, hi, d.breakpoints(), options).value;
    }
    dd.probabilities.push_back(p);
  }
  return dd;
}

enum class DistanceMetric { L1, Sup, ChiSquare };

/// Distance between a digit law and Benford's law. The chi-square statistic
/// n * sum (p - b)^2 / b needs a sample count and is refused for exact laws.
inline double distance_to_benford(const DigitDistribution& dd, DistanceMetric metric) {
  const DigitDistribution benford = benford_digit_probabilities(dd.base);
  if (dd.probabilities.size() != benford.probabilities.size())
    throw ShapeError("digit distribution has the wrong number of digits for its base");
  double acc = 0.0;
  switch (metric) {
    case DistanceMetric::L1:
      for (std::size_t j = 0; j < benford.probabilities.size(); ++j)
        acc += std::abs(dd.probabilities[j] - benford.probabilities[j]);
      return acc;
    case DistanceMetric::Sup:
      for (std::size_t j = 0; j < benford.probabilities.size(); ++j)
        acc = std::max(acc, std::abs(dd.probabilities[j] - benford.probabilities[j]));
      return acc;
    case DistanceMetric::ChiSquare:
      if (dd.source != DigitSource::Empirical)
        throw UsageError("chi-square needs an empirical distribution with a sample count");
      for (std::size_t j = 0; j < benford.probabilities.size(); ++j) {
        const double diff = dd.probabilities[j] - benford.probabilities[j];
        acc += diff * diff / benford.probabilities[j];
      }
      return static_cast<double>(dd.sample_count) * acc;
  }
  return acc;
}

}  // namespace mod1

// SPDX-License-Identifier: Apache-2.0
#pragma once

/// Seeded sampling experiments. Products X_1 ... X_M are never formed: the
/// leading digit depends only on sum_m log_B X_m mod 1, which is what each
/// trial accumulates. Trial t draws from Philox stream (seed, t), so results
/// are identical for any thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mod1/benford.hpp"
#include "mod1/circle.hpp"
#include "mod1/convolution.hpp"
#include "mod1/density.hpp"
#include "mod1/distributions.hpp"
#include "mod1/error.hpp"
#include "mod1/rng.hpp"

namespace mod1 {

// ---------------------------------------------------------------------------
// Factor families

/// Named generator of per-factor log-mantissa laws.
struct FactorFamily {
  std::string descriptor;
  bool identical = true;
  /// Law of log_B X_m, m >= 1.
  std::function<LogMantissaLaw(std::size_t)> law;
  /// Declared finite atom set for atomic families, empty otherwise.
  std::vector<double> atom_set;

  bool atomic() const { return !atom_set.empty(); }

  DensitySequence sequence() const {
    if (identical) {
      DensitySequence s = DensitySequence::repeated(law(1).density);
      return s;
    }
    auto generator = law;
    return DensitySequence::indexed([generator](std::size_t m) { return generator(m).density; }, descriptor);
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const double num = std::stod(t.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(t);
      const std::string den_text = t.substr(slash + 1);
      const double den = std::stod(den_text, &used);
      if (used != den_text.size() || den == 0.0) throw std::invalid_argument(t);
      return num / den;
    }
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " '" + text + "'");
  }
}

// p/q or an integer as an exact rational; nullopt for decimals.
inline std::optional<Rational> parse_rational(const std::string& text) {
  const std::string t = trim(text);
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = t.find('/');
  if (slash == std::string::npos) {
    if (!is_int(t)) return std::nullopt;
    return Rational{std::stoll(t), 1};
  }
  const std::string p = t.substr(0, slash), q = t.substr(slash + 1);
  if (!is_int(p) || !is_int(q) || std::stoll(q) <= 0) return std::nullopt;
  return Rational{std::stoll(p), std::stoll(q)};
}

inline std::map<std::string, std::string> parse_key_values(const std::string& params) {
  std::map<std::string, std::string> out;
  if (trim(params).empty()) return out;
  for (const std::string& item : split(params, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value in parameters, got '" + item + "'");
    out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return out;
}

inline double require_param(const std::map<std::string, std::string>& kv, std::initializer_list<const char*> keys,
                            const std::string& family) {
  for (const char* k : keys) {
    auto it = kv.find(k);
    if (it != kv.end()) return parse_number(it->second, std::string("parameter ") + k);
  }
  throw ConfigError("family '" + family + "' needs parameter " + *keys.begin());
}

inline double optional_param(const std::map<std::string, std::string>& kv, const char* key, double fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : parse_number(it->second, std::string("parameter ") + key);
}

inline void reject_unknown(const std::map<std::string, std::string>& kv, std::initializer_list<const char*> known,
                           const std::string& family) {
  for (const auto& [k, v] : kv) {
    if (std::none_of(known.begin(), known.end(), [&](const char* n) { return k == n; }))
      throw ConfigError("family '" + family + "' has no parameter '" + k + "'");
  }
}

// "{0,1/2}" (equal weights) or "0:0.5,1/2:0.5" (location:weight).
inline CircleDensity parse_atoms(const std::string& params) {
  std::string body = trim(params);
  if (body.empty()) throw ConfigError("atoms family needs a list of atoms");
  std::vector<std::string> locs;
  std::vector<double> weights;
  if (body.front() == '{') {
    if (body.back() != '}') throw ConfigError("unterminated atom set '" + body + "'");
    locs = split(body.substr(1, body.size() - 2), ',');
    weights.assign(locs.size(), 1.0 / static_cast<double>(locs.size()));
  } else {
    for (const std::string& item : split(body, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ConfigError("expected location:weight, got '" + item + "'");
      locs.push_back(item.substr(0, colon));
      weights.push_back(parse_number(item.substr(colon + 1), "atom weight"));
    }
  }
  std::vector<Rational> exact;
  for (const std::string& l : locs) {
    if (auto r = parse_rational(l))
      exact.push_back(*r);
    else
      break;
  }
  try {
    if (exact.size() == locs.size()) return CircleDensity::atomic(exact, weights, "atoms{" + body + "}");
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < locs.size(); ++i) atoms.push_back({parse_number(locs[i], "atom location"), weights[i]});
    return CircleDensity::atomic(std::move(atoms), "atoms{" + body + "}");
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid atoms: ") + e.what());
  }
}

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Build a family from its name and parameter string:
///   uniform
///   box        m=<height>            phi_m for every factor (alias i=)
///   box        <b>^m                 phi_{b^m} for factor m (box11 = 11^m)
///   boxmix     [lo=3,period=5]       phi_{lo + (m mod period)}
///   cosine     a=<amp>,c=<centre>    1 + a cos(2 pi (x - c))
///   mixed      seed=<k>              per-factor random box or raised cosine
///   atoms      {x1,x2,...} | x:w,... point masses
///   pareto     alpha=<a>             modified Pareto, digits in `base`
inline FactorFamily make_family(const std::string& name, const std::string& params, const Base& base) {
  const std::string fam = detail::trim(name);
  const std::string p = detail::trim(params);
  FactorFamily f;
  f.descriptor = p.empty() ? fam : fam + ":" + p;

  auto power_box = [&](double b) {
    if (!(b > 1.0)) throw ConfigError("box power base must exceed 1");
    f.identical = false;
    f.law = [b](std::size_t m) { return box_law(std::pow(b, static_cast<double>(m))); };
  };

  try {
    if (fam == "uniform") {
      if (!p.empty()) throw ConfigError("family 'uniform' takes no parameters");
      f.law = [](std::size_t) { return uniform_law(); };
    } else if (fam == "box11") {
      if (!p.empty()) throw ConfigError("family 'box11' takes no parameters");
      power_box(11.0);
    } else if (fam == "box") {
      const auto caret = p.find("^m");
      if (caret != std::string::npos && caret + 2 == p.size()) {
        power_box(detail::parse_number(p.substr(0, caret), "box power base"));
      } else {
        auto kv = detail::parse_key_values(p);
        detail::reject_unknown(kv, {"m", "i"}, fam);
        const double m = detail::require_param(kv, {"m", "i"}, fam);
        (void)box_density(m);
        f.law = [m](std::size_t) { return box_law(m); };
      }
    } else if (fam == "boxmix") {
      auto kv = detail::parse_key_values(p);
      detail::reject_unknown(kv, {"lo", "period"}, fam);
      const double lo = detail::optional_param(kv, "lo", 3.0);
      const auto period = static_cast<std::size_t>(detail::optional_param(kv, "period", 5.0));
      if (!(lo >= 1.0) || period < 1) throw ConfigError("boxmix needs lo >= 1 and period >= 1");
      f.identical = false;
      f.law = [lo, period](std::size_t m) { return box_law(lo + static_cast<double>(m % period)); };
    } else if (fam == "cosine") {
      auto kv = detail::parse_key_values(p);
      detail::reject_unknown(kv, {"a", "c"}, fam);
      const double a = detail::require_param(kv, {"a"}, fam);
      const double c = detail::optional_param(kv, "c", 0.0);
      (void)raised_cosine_density(a, c);
      f.law = [a, c](std::size_t) { return raised_cosine_law(a, c); };
    } else if (fam == "mixed") {
      auto kv = detail::parse_key_values(p);
      detail::reject_unknown(kv, {"seed"}, fam);
      const auto seed = static_cast<std::uint64_t>(detail::optional_param(kv, "seed", 0.0));
      f.identical = false;
      f.law = [seed](std::size_t m) {
        CounterStream s(detail::mix64(seed), m);
        if (s.uniform() < 0.5) return box_law(2.0 + 18.0 * s.uniform());
        const double a = 2.0 * s.uniform() - 1.0;
        return raised_cosine_law(a, s.uniform());
      };
    } else if (fam == "atoms") {
      CircleDensity atoms = detail::parse_atoms(p);
      for (const Atom& a : atoms.atoms()) f.atom_set.push_back(a.location);
      LogMantissaLaw law = atoms_law(atoms);
      f.law = [law](std::size_t) { return law; };
    } else if (fam == "pareto") {
      auto kv = detail::parse_key_values(p);
      detail::reject_unknown(kv, {"alpha"}, fam);
      const double alpha = detail::require_param(kv, {"alpha"}, fam);
      LogMantissaLaw law = pareto_law(alpha, base);
      f.law = [law](std::size_t) { return law; };
    } else {
      throw ConfigError("unknown factor family '" + fam + "'");
    }
  } catch (const DomainError& e) {
    throw ConfigError("family '" + f.descriptor + "': " + e.what());
  }
  return f;
}

/// Parse "family[:params][ repeated]". "box:11^m" and "box:i=2 repeated" are
/// both accepted; identical-factor families are repeated by default.
inline FactorFamily parse_sequence(const std::string& descriptor, const Base& base) {
  std::string text = detail::trim(descriptor);
  const std::string suffix = "repeated";
  if (text.size() >= suffix.size() && text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0) {
    text = detail::trim(text.substr(0, text.size() - suffix.size()));
    FactorFamily f = parse_sequence(text, base);
    if (!f.identical) throw ConfigError("'" + descriptor + "' varies with m and cannot be repeated");
    return f;
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) return make_family(text, "", base);
  return make_family(text.substr(0, colon), text.substr(colon + 1), base);
}

// ---------------------------------------------------------------------------
// Experiments

struct ExperimentConfig {
  Base base = Base::integer(10);
  std::size_t factor_count = 1;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string family = "uniform";
  std::string params;
  long truncation = 64;
  std::string output_path;
  /// 0 defers to MOD1_THREADS, then to the hardware.
  unsigned threads = 0;

  void validate() const {
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (factor_count < 1) throw ConfigError("factor count must be at least 1");
    if (truncation < 1) throw ConfigError("truncation must be at least 1");
  }
};

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MOD1_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

/// Runs trial(t) -> bin for t in [0, trials) over `threads` workers, each
/// owning a contiguous block of trials and its own tally; tallies are merged
/// in worker order.
template <typename Trial>
std::vector<std::uint64_t> tally_trials(std::size_t trials, std::size_t bins, unsigned threads, Trial trial) {
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), trials));
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(bins, 0));
  auto work = [&](unsigned w) {
    const std::size_t begin = trials * w / threads;
    const std::size_t end = trials * (w + 1) / threads;
    auto& counts = partial[w];
    for (std::size_t t = begin; t < end; ++t) ++counts[trial(t)];
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  std::vector<std::uint64_t> total(bins, 0);
  for (const auto& counts : partial)
    for (std::size_t b = 0; b < bins; ++b) total[b] += counts[b];
  return total;
}

/// Per-factor samplers for one experiment.
class CircleSumSampler {
 public:
  CircleSumSampler(const FactorFamily& family, std::size_t factors) : factors_(factors) {
    if (family.identical) {
      samplers_.push_back(family.law(1).sample);
    } else {
      samplers_.reserve(factors);
      for (std::size_t m = 1; m <= factors; ++m) samplers_.push_back(family.law(m).sample);
    }
  }

  /// (log_B X_1 + ... + log_B X_M) mod 1 for one trial.
  double operator()(std::uint64_t seed, std::uint64_t trial) const {
    CounterStream rng(seed, trial);
    double y = 0.0;
    if (samplers_.size() == 1) {
      const auto& draw = samplers_.front();
      for (std::size_t m = 0; m < factors_; ++m) y = reduce(y + draw(rng.uniform_open()));
    } else {
      for (std::size_t m = 0; m < factors_; ++m) y = reduce(y + samplers_[m](rng.uniform_open()));
    }
    return y;
  }

 private:
  std::size_t factors_;
  std::vector<std::function<double(double)>> samplers_;
};

}  // namespace detail

/// Empirical leading-digit law of X_1 ... X_M.
inline DigitDistribution simulate_product_digits(const ExperimentConfig& cfg) {
  cfg.validate();
  const FactorFamily family = make_family(cfg.family, cfg.params, cfg.base);
  const detail::CircleSumSampler sampler(family, cfg.factor_count);
  const Base base = cfg.base;
  auto counts = detail::tally_trials(cfg.trials, static_cast<std::size_t>(base.digit_count()),
                                     resolve_threads(cfg.threads), [&](std::size_t t) {
                                       return static_cast<std::size_t>(first_digit(sampler(cfg.seed, t), base) - 1);
                                     });
  return empirical_digit_distribution(base, std::move(counts));
}

struct CircleHistogram {
  std::vector<std::uint64_t> counts;
  std::vector<double> frequencies;
  /// sum_i |freq_i - 1/bins|, the L^1 distance of the histogram density to 1.
  double l1_to_flat = 0.0;
};

/// Histogram of (Y_1 + ... + Y_M) mod 1 on `bins` equal bins.
inline CircleHistogram simulate_sum_mod1(const ExperimentConfig& cfg, std::size_t bins) {
  cfg.validate();
  if (bins < 2) throw ConfigError("histogram needs at least 2 bins");
  const FactorFamily family = make_family(cfg.family, cfg.params, cfg.base);
  const detail::CircleSumSampler sampler(family, cfg.factor_count);
  const double nb = static_cast<double>(bins);
  CircleHistogram h;
  h.counts = detail::tally_trials(cfg.trials, bins, resolve_threads(cfg.threads), [&](std::size_t t) {
    return std::min(static_cast<std::size_t>(sampler(cfg.seed, t) * nb), bins - 1);
  });
  for (auto c : h.counts) {
    const double f = static_cast<double>(c) / static_cast<double>(cfg.trials);
    h.frequencies.push_back(f);
    h.l1_to_flat += std::abs(f - 1.0 / nb);
  }
  return h;
}

/// Mass the Fejer mean of `s` puts on each of `bins` equal bins.
inline std::vector<double> fejer_bin_probabilities(const Spectrum& s, std::size_t bins) {
  const double nb = static_cast<double>(bins);
  const double nn = static_cast<double>(s.truncation());
  std::vector<double> p(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    const double a = static_cast<double>(i) / nb;
    const double b = static_cast<double>(i + 1) / nb;
    Complex acc = s[0] * (b - a);
    for (long n = 1; n < s.truncation(); ++n) {
      const double w = 1.0 - static_cast<double>(n) / nn;
      const double nd = static_cast<double>(n);
      // int_a^b e^{2 pi i n x} dx
      const Complex integral = (turn(nd * b) - turn(nd * a)) / Complex(0.0, kTwoPi * nd);
      acc += w * (s[n] * integral + s[-n] * std::conj(integral));
    }
    p[i] = acc.real();
  }
  return p;
}

struct CrossValidationReport {
  std::size_t factor_count = 0;
  std::size_t trials = 0;
  std::size_t bins = 0;

  double empirical_digit_l1 = 0.0;
  /// sum_j sqrt(b_j (1 - b_j) / T): scale of the digit L^1 under exact Benford.
  double digit_standard_error = 0.0;
  bool empirical_non_benford = false;

  double empirical_circle_l1 = 0.0;
  double spectral_binned_l1 = 0.0;
  double spectral_grid_l1 = 0.0;
  double fejer_bound = 0.0;
  /// sum_i sqrt(p_i (1 - p_i) / T) for the spectrally predicted bin masses.
  double circle_standard_error = 0.0;
  bool disagreement = false;

  ConvergenceVerdict verdict;
  bool spectral_non_convergence = false;
};

/// Side-by-side empirical and spectral distances for one configuration.
/// `disagreement` is raised when the two circle L^1 distances differ by more
/// than three Monte Carlo standard errors.
inline CrossValidationReport spectral_vs_empirical_report(const ExperimentConfig& cfg, std::size_t bins = 50,
                                                          const VerdictOptions& verdict_options = {}) {
  cfg.validate();
  const FactorFamily family = make_family(cfg.family, cfg.params, cfg.base);
  const DensitySequence seq = family.sequence();
  CrossValidationReport r;
  r.factor_count = cfg.factor_count;
  r.trials = cfg.trials;
  r.bins = bins;

  const DigitDistribution digits = simulate_product_digits(cfg);
  r.empirical_digit_l1 = distance_to_benford(digits, DistanceMetric::L1);
  const double t = static_cast<double>(cfg.trials);
  for (double b : benford_digit_probabilities(cfg.base).probabilities) r.digit_standard_error += std::sqrt(b * (1 - b) / t);
  r.empirical_non_benford = r.empirical_digit_l1 > 3.0 * r.digit_standard_error;

  const CircleHistogram hist = simulate_sum_mod1(cfg, bins);
  r.empirical_circle_l1 = hist.l1_to_flat;

  const ConvolvedSpectrum cs = sum_mod1_spectrum(seq, cfg.factor_count, cfg.truncation);
  const auto predicted = fejer_bin_probabilities(cs.spectrum, bins);
  for (double p : predicted) {
    r.spectral_binned_l1 += std::abs(p - 1.0 / static_cast<double>(bins));
    const double q = std::clamp(p, 0.0, 1.0);
    r.circle_standard_error += std::sqrt(q * (1 - q) / t);
  }
  const DistanceToUniform d = l1_distance_to_uniform(cs, std::max<std::size_t>(1024, 4 * cs.spectrum.truncation() + 1));
  r.spectral_grid_l1 = d.grid_l1;
  r.fejer_bound = d.fejer_bound;
  r.disagreement = std::abs(r.empirical_circle_l1 - r.spectral_binned_l1) > 3.0 * r.circle_standard_error;

  VerdictOptions vo = verdict_options;
  vo.max_n = cfg.truncation;
  r.verdict = convergence_verdict(seq, vo);
  r.spectral_non_convergence = r.verdict.state == VerdictState::Diverges;
  return r;
}

}  // namespace mod1

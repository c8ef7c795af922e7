// SPDX-License-Identifier: Apache-2.0
#include "cli/commands.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mod1/benford.hpp"
#include "mod1/convolution.hpp"
#include "mod1/density.hpp"
#include "mod1/discrete.hpp"
#include "mod1/distributions.hpp"
#include "mod1/error.hpp"
#include "mod1/montecarlo.hpp"

#ifndef MOD1_VERSION
#define MOD1_VERSION "unknown"
#endif

namespace mod1::cli {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Output sink: a file when a path is given, otherwise `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (!path_.empty()) {
      file_.open(path_, std::ios::binary | std::ios::trunc);
      if (!file_) throw IoError("cannot open '" + path_ + "' for writing");
    }
    stream_ = path_.empty() ? &fallback : &file_;
  }

  std::ostream& stream() { return *stream_; }
  bool to_file() const { return !path_.empty(); }

  void close() {
    if (!to_file()) return;
    file_.close();
    if (file_.fail()) throw IoError("failed writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

void write_manifest(const std::string& command, const json& config, std::uint64_t seed, const std::string& output,
                    Clock::time_point started) {
  json m;
  m["command"] = command;
  m["config"] = config;
  m["seed"] = seed;
  m["version"] = MOD1_VERSION;
  std::string digest;
  try {
    digest = sha256_file(output);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
  m["outputs"] = json::array({json{{"path", output}, {"sha256", digest}}});
  m["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started).count();
  const std::string path = output + ".manifest.json";
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << m.dump(2) << '\n';
  f.close();
  if (f.fail()) throw IoError("failed writing '" + path + "'");
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  for (const auto& c : cells) {
    if (!row.empty()) row += ',';
    row += c;
  }
  return row + '\n';
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
  std::string family = "uniform";
  std::string params;
  long max_n = 8;
  std::string base = "10";
  std::size_t index = 1;
  std::string out;
};

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
  const auto started = Clock::now();
  if (a.max_n < 0) throw ConfigError("--max-n must be non-negative");
  if (a.index < 1) throw ConfigError("--index must be at least 1");
  const Base base = Base::parse(a.base);
  const FactorFamily family = make_family(a.family, a.params, base);
  const CircleDensity d = family.law(a.index).density;

  Sink sink(a.out, out);
  auto& os = sink.stream();
  os << "n,re,im,modulus\n";
  for (long n = 0; n <= a.max_n; ++n) {
    const Complex c = fourier_coefficient(d, n);
    os << csv_row({std::to_string(n), format_number(c.real()), format_number(c.imag()), format_number(std::abs(c))});
  }
  sink.close();
  if (sink.to_file()) {
    json cfg{{"family", a.family}, {"params", a.params}, {"max_n", a.max_n}, {"base", base.name()}, {"index", a.index}};
    write_manifest("spectrum", cfg, 0, a.out, started);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerdictArgs {
  std::string sequence;
  long max_n = 64;
  std::size_t horizon = 10000;
  double threshold = 1e-6;
  std::string base = "10";
};

int cmd_verdict(const VerdictArgs& a, std::ostream& out) {
  if (a.max_n < 1) throw ConfigError("--max-n must be at least 1");
  if (a.horizon < 1) throw ConfigError("--horizon must be at least 1");
  if (!(a.threshold > 0.0 && a.threshold < 1.0)) throw ConfigError("--threshold must lie in (0, 1)");
  const Base base = Base::parse(a.base);
  const FactorFamily family = parse_sequence(a.sequence, base);
  VerdictOptions options;
  options.max_n = a.max_n;
  options.horizon = a.horizon;
  options.threshold = a.threshold;
  const DensitySequence seq = family.sequence();
  const ConvergenceVerdict v =
      family.atomic() ? discrete_convergence_verdict(seq, family.atom_set, options) : convergence_verdict(seq, options);

  json j;
  j["verdict"] = to_string(v.state);
  j["worst_n"] = v.worst_n;
  j["limiting_modulus_estimate"] = v.limiting_modulus_estimate;
  j["l1_bound"] = v.l1_bound;
  out << j.dump() << '\n';
  switch (v.state) {
    case VerdictState::Converges: return kOk;
    case VerdictState::Diverges: return kDiverges;
    case VerdictState::Indeterminate: return kIndeterminate;
  }
  return kFailure;
}

// ---------------------------------------------------------------------------

struct BenfordArgs {
  std::string family = "uniform";
  std::string params;
  std::size_t factors = 1;
  std::size_t trials = 1000;
  std::string base = "10";
  std::uint64_t seed = 0;
  std::string out;
  unsigned threads = 0;
};

int cmd_benford(const BenfordArgs& a, std::ostream& out) {
  const auto started = Clock::now();
  ExperimentConfig cfg;
  cfg.base = Base::parse(a.base);
  cfg.factor_count = a.factors;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.family = a.family;
  cfg.params = a.params;
  cfg.output_path = a.out;
  cfg.threads = a.threads;
  cfg.validate();
  (void)make_family(cfg.family, cfg.params, cfg.base);

  // Open the sink before the run so an unwritable path fails fast.
  Sink sink(a.out, out);
  const DigitDistribution empirical = simulate_product_digits(cfg);
  const DigitDistribution benford = benford_digit_probabilities(cfg.base);

  auto& os = sink.stream();
  os << "digit,empirical_freq,benford_prob,abs_diff\n";
  for (int j = 1; j <= cfg.base.digit_count(); ++j) {
    const double p = empirical.probability(j), b = benford.probability(j);
    os << csv_row({std::to_string(j), format_number(p), format_number(b), format_number(std::abs(p - b))});
  }
  os << csv_row({"l1", format_number(distance_to_benford(empirical, DistanceMetric::L1))});
  os << csv_row({"sup", format_number(distance_to_benford(empirical, DistanceMetric::Sup))});
  os << csv_row({"chi_square", format_number(distance_to_benford(empirical, DistanceMetric::ChiSquare))});
  sink.close();
  if (sink.to_file()) {
    json c{{"family", a.family}, {"params", a.params}, {"factors", a.factors}, {"trials", a.trials},
           {"base", cfg.base.name()}, {"threads", resolve_threads(a.threads)}};
    write_manifest("benford", c, a.seed, a.out, started);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct ParetoArgs {
  double alpha = 2.0;
  long terms = 200;
  std::size_t points = 21;
  std::string out;
};

int cmd_pareto_table(const ParetoArgs& a, std::ostream& out) {
  const auto started = Clock::now();
  if (!(a.alpha > 1.0)) throw ConfigError("--alpha must exceed 1");
  if (a.terms < 1) throw ConfigError("--terms must be at least 1");
  if (a.points < 2) throw ConfigError("--points must be at least 2");

  Sink sink(a.out, out);
  auto& os = sink.stream();
  os << "s,F,f,tail_bound\n";
  const double e = std::numbers::e;
  for (std::size_t k = 0; k < a.points; ++k) {
    const double s =
        k + 1 == a.points ? e : 1.0 + (e - 1.0) * static_cast<double>(k) / static_cast<double>(a.points - 1);
    const SeriesValue cdf = pareto_mantissa_cdf(a.alpha, s, a.terms);
    const SeriesValue pdf = pareto_mantissa_density(a.alpha, s, a.terms);
    os << csv_row({format_number(s), format_number(cdf.value), format_number(pdf.value),
                   format_number(std::max(cdf.tail_bound, pdf.tail_bound))});
  }
  sink.close();
  if (sink.to_file()) {
    json c{{"alpha", a.alpha}, {"terms", a.terms}, {"points", a.points}};
    write_manifest("pareto-table", c, 0, a.out, started);
  }
  return kOk;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s == "-0") return "0";
  return s;
}

std::string sha256_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read '" + path + "'");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("SHA-256 unavailable");
  }
  char buf[1 << 16];
  while (f) {
    f.read(buf, sizeof buf);
    if (f.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(f.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  static const char* digits = "0123456789abcdef";
  for (unsigned i = 0; i < len; ++i) {
    hex += digits[md[i] >> 4];
    hex += digits[md[i] & 15];
  }
  return hex;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sums of circle densities mod 1 and leading digits of products", "mod1"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(MOD1_VERSION));

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "Fourier coefficients of a factor density as CSV");
  spectrum->add_option("--family", sa.family, "Factor family")->required();
  spectrum->add_option("--params", sa.params, "Family parameters");
  spectrum->add_option("--max-n", sa.max_n, "Largest frequency")->capture_default_str();
  spectrum->add_option("--base", sa.base, "Digit base (integer >= 2 or euler)")->capture_default_str();
  spectrum->add_option("--index", sa.index, "Factor index m for families that vary with m")->capture_default_str();
  spectrum->add_option("--out", sa.out, "Output CSV (default: standard output)");

  VerdictArgs va;
  auto* verdict = app.add_subcommand("verdict", "Convergence verdict for a factor sequence");
  verdict->add_option("--sequence", va.sequence, "family[:params][ repeated]")->required();
  verdict->add_option("--max-n", va.max_n, "Frequencies tested")->capture_default_str();
  verdict->add_option("--horizon", va.horizon, "Number of factors folded")->capture_default_str();
  verdict->add_option("--threshold", va.threshold, "Modulus counted as zero")->capture_default_str();
  verdict->add_option("--base", va.base, "Digit base for families that depend on it")->capture_default_str();

  BenfordArgs ba;
  auto* benford = app.add_subcommand("benford", "Simulated leading digits of products versus Benford's law");
  benford->add_option("--family", ba.family, "Factor family")->required();
  benford->add_option("--params", ba.params, "Family parameters");
  benford->add_option("--factors", ba.factors, "Factors per product")->capture_default_str();
  benford->add_option("--trials", ba.trials, "Number of products")->capture_default_str();
  benford->add_option("--base", ba.base, "Digit base (integer >= 2 or euler)")->capture_default_str();
  benford->add_option("--seed", ba.seed, "Random seed")->capture_default_str();
  benford->add_option("--out", ba.out, "Output CSV (default: standard output)");
  benford->add_option("--threads", ba.threads, "Worker threads, 0 for MOD1_THREADS or all cores")
      ->capture_default_str();

  ParetoArgs pa;
  auto* pareto = app.add_subcommand("pareto-table", "Base-e mantissa CDF and density of the modified Pareto law");
  pareto->add_option("--alpha", pa.alpha, "Tail exponent, > 1")->capture_default_str();
  pareto->add_option("--terms", pa.terms, "Series terms")->capture_default_str();
  pareto->add_option("--points", pa.points, "Grid points on [1, e]")->capture_default_str();
  pareto->add_option("--out", pa.out, "Output CSV (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*spectrum) return cmd_spectrum(sa, out);
    if (*verdict) return cmd_verdict(va, out);
    if (*benford) return cmd_benford(ba, out);
    if (*pareto) return cmd_pareto_table(pa, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const HypothesisViolation& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kConfigError;
}

}  // namespace mod1::cli

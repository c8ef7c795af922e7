// SPDX-License-Identifier: Apache-2.0
// Products of factors whose log-mantissas are boxes of width 11^-m around 1/8.
// Every coefficient product stays away from zero, so the leading digits never
// settle on Benford's law.
#include <cstdio>

#include "mod1/benford.hpp"
#include "mod1/convolution.hpp"
#include "mod1/montecarlo.hpp"

int main() {
  mod1::ExperimentConfig cfg;
  cfg.family = "box11";
  cfg.factor_count = 1000;
  cfg.trials = 10000;
  cfg.seed = 42;

  const auto digits = mod1::simulate_product_digits(cfg);
  const auto benford = mod1::benford_digit_probabilities(cfg.base);
  std::printf("digit  empirical  benford\n");
  for (int j = 1; j <= 9; ++j) std::printf("%5d  %9.4f  %7.4f\n", j, digits.probability(j), benford.probability(j));
  std::printf("L1 distance to Benford: %.4f\n", mod1::distance_to_benford(digits, mod1::DistanceMetric::L1));

  const auto family = mod1::make_family("box11", "", cfg.base);
  const auto v = mod1::convergence_verdict(family.sequence(), 16, 1000);
  std::printf("verdict: %s (worst n = %ld, |h(n)| -> %.4f)\n", mod1::to_string(v.state), v.worst_n,
              v.limiting_modulus_estimate);
}

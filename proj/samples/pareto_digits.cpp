// SPDX-License-Identifier: Apache-2.0
// Base-e leading digits of the modified Pareto law with alpha = 2, from the
// series, and of a product of 50 such factors, by simulation.
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mod1/benford.hpp"
#include "mod1/distributions.hpp"
#include "mod1/montecarlo.hpp"

int main() {
  const double alpha = 2.0;
  const auto one = mod1::pareto_mantissa_cdf(alpha, 2.0, 400);
  std::printf("single factor: P(digit 1) = %.6f (+/- %.1e), Benford %.6f\n", one.value, one.tail_bound,
              std::log(2.0));

  mod1::ExperimentConfig cfg;
  cfg.base = mod1::Base::euler();
  cfg.family = "pareto";
  cfg.params = "alpha=2";
  cfg.factor_count = 50;
  cfg.trials = 100000;
  cfg.seed = 7;
  const auto digits = mod1::simulate_product_digits(cfg);
  std::printf("50 factors:    P(digit 1) = %.6f, L1 to Benford %.4f\n", digits.probability(1),
              mod1::distance_to_benford(digits, mod1::DistanceMetric::L1));
}

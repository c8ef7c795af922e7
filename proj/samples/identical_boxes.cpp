// SPDX-License-Identifier: Apache-2.0
// Sum of M copies of the box of height 4 around 1/8: distance to the uniform
// law and the Fejer bound as M grows.
#include <cstdio>

#include "mod1/convolution.hpp"
#include "mod1/distributions.hpp"

int main() {
  const auto seq = mod1::DensitySequence::repeated(mod1::box_density(4.0));
  std::printf("%6s  %12s  %12s\n", "M", "grid L1", "Fejer bound");
  for (std::size_t m : {1, 2, 5, 10, 20, 50, 100, 200}) {
    const auto cs = mod1::sum_mod1_spectrum(seq, m, 64);
    const auto d = mod1::l1_distance_to_uniform(cs, 4096);
    std::printf("%6zu  %12.4e  %12.4e\n", m, d.grid_l1, d.fejer_bound);
  }
}

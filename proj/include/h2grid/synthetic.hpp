#pragma once

#include <cstdint>
#include <random>

#include "h2grid/grid.hpp"

namespace h2grid::synth {

// A two-region test system: a windy, lightly loaded north (the first half of
// the nodes) and a load-heavy south with solar and costlier thermal plants.
struct SyntheticSpec {
  std::uint64_t seed = 42;
  int n_nodes = 10;
  int n_lines = 14;
  int hours = 168;
  double congestion = 0.5;        // 0: ample transfer capacity, 1: tight north-south corridor
  double renewable_share = 0.5;   // renewable energy as a share of demand energy
  double peak_demand_mw = 2500.0;
};

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Throws InvalidSpec.
grid::PowerSystem generate_synthetic_system(const SyntheticSpec& spec);

}  // namespace h2grid::synth

#pragma once

#include <cstdint>

#include "poolopt/dataset.hpp"

namespace poolopt {

// Synthetic landscape with a planted Pareto island: a rare set of rows,
// tight in decision space, holding every non-dominated solution.
struct IslandSpec {
    int n_rows = 5000;
    int n_numeric = 5;
    int n_objectives = 2;
    double island_fraction = 0.006;
    double island_radius = 0.05;
    double noise = 0.0;
    std::uint64_t seed = 1;
};

// Island rows live inside a ball of island_radius around a random center
// and carry mutually non-dominated near-ideal objectives; background rows
// get dominated objectives that grow with distance from the center, plus
// noise. With noise = 0 the true front is exactly the island.
Dataset generate_island(const IslandSpec& spec);

// Uniform random decisions and objectives: the null model with no planted
// structure.
Dataset generate_uniform(int n_rows, int n_numeric, int n_objectives, std::uint64_t seed);

}  // namespace poolopt

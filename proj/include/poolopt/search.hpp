#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poolopt/dataset.hpp"
#include "poolopt/pareto.hpp"

namespace poolopt {

// Revealed rows split into a d2h-ranked elite and the remainder. For EZR
// the elite is capped at ceil(sqrt(spent)); for NSGA-II it holds the final
// population.
struct Archive {
    std::vector<int> best;
    std::vector<int> rest;
};

struct Trajectory {
    struct Step {
        int step;   // 0-based reveal index
        int id;     // row id
        double d2h;
    };
    std::vector<Step> steps;
    Archive archive;
    std::string method;
    int budget = 0;
    std::uint64_t seed = 0;

    std::vector<double> step_d2h() const;
    std::vector<int> revealed_ids() const;
};

struct SearchConfig {
    int budget = 200;
    std::uint64_t seed = 1;
    int acquisition_pool = 128;
    int warmup = 4;
    int nsga_population = 0;  // 0: 10 for budgets <= 200, else 20
    double crossover_prob = 0.9;
    double crossover_eta = 15.0;
    double mutation_prob = 0.0;  // 0: 1/K per decision column
    double mutation_eta = 20.0;

    int population_for(int budget) const {
        if (nsga_population > 0) return nsga_population;
        return budget <= 200 ? 10 : 20;
    }
};

// Greedy zoom search. Seeds Best/Rest with `warmup` random reveals, then
// each iteration samples up to `acquisition_pool` unlabeled candidates
// (budget-free) and reveals the first one whose decision-space distance to
// the Best centroid beats its distance to the Rest centroid; if none
// qualifies, the candidate minimizing that margin. Archives re-rank after
// every reveal under the ceil(sqrt(spent)) bound.
Trajectory run_ezr(Pool& pool, const SearchConfig& cfg);

// Uniform random reveals without replacement.
Trajectory run_random(Pool& pool, const SearchConfig& cfg);

// Pool-adapted NSGA-II: binary-tournament parents by (rank, crowding),
// SBX + polynomial mutation on numeric decisions, uniform crossover +
// random reset on categorical ones. Each synthetic offspring snaps to the
// nearest not-yet-revealed row, which is revealed; rank-and-crowding
// truncation keeps the population at its configured size. Generations
// truncate at the budget, never overdraft.
Trajectory run_nsga2(Pool& pool, const SearchConfig& cfg);

// Non-dominated filter over every revealed row of the run.
Frontier trajectory_frontier(const Trajectory& t, const Dataset& d);

// Revealed id with minimum d2h; ties go to the lower id.
int best_solution(const Trajectory& t);

}  // namespace poolopt

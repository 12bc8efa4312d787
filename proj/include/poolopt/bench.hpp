#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "poolopt/pareto.hpp"
#include "poolopt/search.hpp"
#include "poolopt/stats.hpp"

namespace poolopt {

struct BenchConfig {
    std::vector<std::string> data;  // dataset files and/or directories
    std::vector<std::string> methods = {"ezr", "random", "nsga2"};
    std::vector<int> budgets = {200};
    int trials = 20;
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = "out";
    int workers = 1;
};

// One (dataset, method, budget, trial) benchmark cell. Trial seeds are
// base seed + trial index, so cells are independent and order-free.
struct CellResult {
    std::string dataset;
    std::string method;
    int budget = 0;
    int trial = 0;
    double best_d2h = 0.0;
    double regret = 0.0;
    double runtime_ms = 0.0;
    CoverageScores cov;
    std::vector<double> regret_curve;  // per-step best-so-far regret
};

// Expands files and directories into the .csv files they contain.
std::vector<std::filesystem::path> collect_dataset_paths(const std::vector<std::string>& data);

// Dispatches one method run on a fresh pool and scores it.
CellResult run_cell(const Dataset& d, const Frontier& truth, double star,
                    const std::string& method, int budget, int trial, std::uint64_t base_seed,
                    bool keep_curve);

// Per-dataset Scott-Knott tiers over final best_d2h, labels "method-budget".
TierTable tier_table(const std::vector<CellResult>& results);

// Subcommand bodies; they return process exit codes (0 ok, 1 total
// failure, 2 bad arguments) and print notices to stderr.
int cmd_landscape(const std::vector<std::string>& data, const std::string& out_path,
                  std::uint64_t seed);
int cmd_bench(const BenchConfig& cfg);
int cmd_curves(const BenchConfig& cfg);
int cmd_front(const BenchConfig& cfg);
int cmd_explain(const std::string& path, int budget, std::uint64_t seed, std::ostream& out);

// Command-line entry point (subcommand dispatch lives here so tests can
// drive the exact CLI surface in-process).
int cli_main(int argc, const char* const* argv);

}  // namespace poolopt

#include <CLI11.hpp>
#include <iostream>

#include "poolopt/bench.hpp"
#include "poolopt/synth.hpp"

namespace poolopt {

namespace {

void add_bench_flags(CLI::App* cmd, BenchConfig& cfg) {
    cmd->add_option("--data", cfg.data, "dataset files or directories")->required();
    cmd->add_option("--methods", cfg.methods, "subset of ezr,random,nsga2")
        ->delimiter(',')
        ->check(CLI::IsMember({"ezr", "random", "nsga2"}));
    cmd->add_option("--budgets", cfg.budgets, "evaluation budgets")->delimiter(',');
    cmd->add_option("--trials", cfg.trials, "independent trials per cell");
    cmd->add_option("--seed", cfg.seed, "base seed (trial t runs at seed+t)");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--workers", cfg.workers, "parallel worker threads");
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"pool-based multi-objective optimization benchmark"};
    app.require_subcommand(1);

    // landscape
    std::vector<std::string> landscape_data;
    std::string landscape_out = "-";
    std::uint64_t landscape_seed = 1;
    auto* landscape = app.add_subcommand("landscape", "per-dataset concentration statistics");
    landscape->add_option("--data", landscape_data, "dataset files or directories")->required();
    landscape->add_option("--out", landscape_out, "output CSV ('-' = stdout)");
    landscape->add_option("--seed", landscape_seed, "sampling seed");

    BenchConfig bench_cfg, curves_cfg, front_cfg;
    auto* bench = app.add_subcommand("bench", "run trials, Scott-Knott tiers, W/T/L tables");
    add_bench_flags(bench, bench_cfg);
    auto* curves = app.add_subcommand("curves", "median/IQR regret per evaluation step");
    add_bench_flags(curves, curves_cfg);
    auto* front = app.add_subcommand("front", "frontier coverage metrics per method");
    add_bench_flags(front, front_cfg);

    // explain
    std::string explain_data;
    int explain_budget = 200;
    std::uint64_t explain_seed = 1;
    auto* explain = app.add_subcommand("explain", "run ezr once and print its tree");
    explain->add_option("--data", explain_data, "dataset file")->required();
    explain->add_option("--budget", explain_budget, "evaluation budget");
    explain->add_option("--seed", explain_seed, "seed");

    // synth
    std::string synth_kind = "island", synth_out;
    IslandSpec island;
    auto* synth = app.add_subcommand("synth", "generate a synthetic MOOT dataset");
    synth->add_option("--kind", synth_kind, "island or uniform")
        ->check(CLI::IsMember({"island", "uniform"}));
    synth->add_option("--rows", island.n_rows, "row count");
    synth->add_option("--decisions", island.n_numeric, "numeric decision columns");
    synth->add_option("--objectives", island.n_objectives, "objective columns");
    synth->add_option("--fraction", island.island_fraction, "target Pareto fraction");
    synth->add_option("--radius", island.island_radius, "island radius in decision space");
    synth->add_option("--noise", island.noise, "background objective noise");
    synth->add_option("--seed", island.seed, "seed");
    synth->add_option("--out", synth_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*landscape) return cmd_landscape(landscape_data, landscape_out, landscape_seed);
        if (*bench) return cmd_bench(bench_cfg);
        if (*curves) return cmd_curves(curves_cfg);
        if (*front) return cmd_front(front_cfg);
        if (*explain) return cmd_explain(explain_data, explain_budget, explain_seed, std::cout);
        if (*synth) {
            const Dataset d = synth_kind == "island"
                                  ? generate_island(island)
                                  : generate_uniform(island.n_rows, island.n_numeric,
                                                     island.n_objectives, island.seed);
            d.write_csv(std::filesystem::path(synth_out));
            std::cout << "wrote " << synth_out << " (" << d.rows() << " rows)\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace poolopt

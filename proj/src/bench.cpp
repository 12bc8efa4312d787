#include "poolopt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "poolopt/explain.hpp"
#include "poolopt/objectives.hpp"
#include "poolopt/util.hpp"

namespace poolopt {

namespace {

namespace fs = std::filesystem;

struct LoadedDataset {
    Dataset data;
    Frontier truth;
    double star = 0.0;
};

// Loads every readable dataset; unreadable files get a stderr notice.
std::vector<LoadedDataset> load_all(const std::vector<std::string>& data) {
    std::vector<LoadedDataset> out;
    for (const auto& path : collect_dataset_paths(data)) {
        try {
            LoadedDataset entry{Dataset::load(path), {}, 0.0};
            entry.truth = true_front(entry.data);
            entry.star = d2h_star(entry.data);
            out.push_back(std::move(entry));
        } catch (const std::exception& e) {
            std::cerr << "notice: skipping " << path.string() << ": " << e.what() << "\n";
        }
    }
    return out;
}

bool feasible(const Dataset& d, const std::string& method, int budget, std::string& why) {
    if (budget > d.rows()) {
        why = "budget exceeds pool size";
        return false;
    }
    SearchConfig probe;
    if (method == "ezr" && budget < probe.warmup + 1) {
        why = "budget below ezr warmup";
        return false;
    }
    if (method == "nsga2" && budget < probe.population_for(budget)) {
        why = "budget below nsga2 population";
        return false;
    }
    return true;
}

struct Cell {
    int dataset_idx;
    std::string method;
    int budget;
    int trial;
};

std::string cell_key(const std::string& dataset, const std::string& method, int budget,
                     int trial) {
    return dataset + "\x1f" + method + "\x1f" + std::to_string(budget) + "\x1f" +
           std::to_string(trial);
}

// Runs cells on `workers` threads; failed cells report and drop out.
std::vector<CellResult> run_cells(const std::vector<LoadedDataset>& datasets,
                                  const std::vector<Cell>& cells, std::uint64_t base_seed,
                                  int workers, bool keep_curves) {
    std::vector<CellResult> results(cells.size());
    std::vector<char> ok(cells.size(), 0);
    std::atomic<std::size_t> cursor{0};
    std::mutex io;

    auto worker = [&]() {
        while (true) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell& c = cells[i];
            const LoadedDataset& ds = datasets[c.dataset_idx];
            try {
                results[i] = run_cell(ds.data, ds.truth, ds.star, c.method, c.budget, c.trial,
                                      base_seed, keep_curves);
                ok[i] = 1;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(io);
                std::cerr << "notice: cell " << ds.data.name() << "/" << c.method << "/"
                          << c.budget << "/" << c.trial << " failed: " << e.what() << "\n";
            }
        }
    };

    const int n_threads = std::max(1, workers);
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    std::vector<CellResult> kept;
    kept.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (ok[i]) kept.push_back(std::move(results[i]));
    return kept;
}

std::vector<Cell> enumerate_cells(const std::vector<LoadedDataset>& datasets,
                                  const BenchConfig& cfg) {
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < datasets.size(); ++i) {
        for (const auto& method : cfg.methods) {
            for (const int budget : cfg.budgets) {
                std::string why;
                if (!feasible(datasets[i].data, method, budget, why)) {
                    std::cerr << "notice: skipping " << datasets[i].data.name() << "/" << method
                              << "/" << budget << ": " << why << "\n";
                    continue;
                }
                for (int trial = 0; trial < cfg.trials; ++trial)
                    cells.push_back({static_cast<int>(i), method, budget, trial});
            }
        }
    }
    return cells;
}

void sort_results(std::vector<CellResult>& results) {
    std::sort(results.begin(), results.end(), [](const CellResult& a, const CellResult& b) {
        if (a.dataset != b.dataset) return a.dataset < b.dataset;
        if (a.method != b.method) return a.method < b.method;
        if (a.budget != b.budget) return a.budget < b.budget;
        return a.trial < b.trial;
    });
}

constexpr const char* kRawHeader =
    "dataset,method,budget,trial,best_d2h,regret,runtime_ms,true_igd,true_gd,hv,spacing,"
    "frontier_size,non_extreme";

std::string raw_line(const CellResult& r) {
    std::ostringstream os;
    os << r.dataset << ',' << r.method << ',' << r.budget << ',' << r.trial << ','
       << fmt_double(r.best_d2h) << ',' << fmt_double(r.regret) << ',' << fmt_double(r.runtime_ms)
       << ',' << fmt_double(r.cov.true_igd) << ',' << fmt_double(r.cov.true_gd) << ','
       << fmt_double(r.cov.hv) << ',' << fmt_double(r.cov.spacing) << ',' << r.cov.frontier_size
       << ',' << r.cov.non_extreme_count;
    return os.str();
}

std::string label_of(const std::string& method, int budget) {
    return method + "-" + std::to_string(budget);
}

// Cheaper-method ordering for Win/Tie/Loss references: budget first, then
// machinery (random < ezr < nsga2).
int method_cost(const std::string& method) {
    if (method == "random") return 0;
    if (method == "ezr") return 1;
    return 2;
}

struct LabelInfo {
    std::string method;
    int budget;
};

}  // namespace

std::vector<fs::path> collect_dataset_paths(const std::vector<std::string>& data) {
    std::vector<fs::path> paths;
    for (const auto& entry : data) {
        const fs::path p(entry);
        std::error_code ec;
        if (fs::is_directory(p, ec)) {
            for (const auto& file : fs::directory_iterator(p)) {
                if (file.path().extension() == ".csv") paths.push_back(file.path());
            }
        } else {
            paths.push_back(p);
        }
    }
    std::sort(paths.begin(), paths.end());
    return paths;
}

CellResult run_cell(const Dataset& d, const Frontier& truth, double star,
                    const std::string& method, int budget, int trial, std::uint64_t base_seed,
                    bool keep_curve) {
    SearchConfig cfg;
    cfg.budget = budget;
    cfg.seed = base_seed + static_cast<std::uint64_t>(trial);

    Pool pool(d, budget);
    const auto t0 = std::chrono::steady_clock::now();
    Trajectory traj;
    if (method == "ezr")
        traj = run_ezr(pool, cfg);
    else if (method == "random")
        traj = run_random(pool, cfg);
    else if (method == "nsga2")
        traj = run_nsga2(pool, cfg);
    else
        throw Error("unknown method " + method);
    const auto t1 = std::chrono::steady_clock::now();

    CellResult r;
    r.dataset = d.name();
    r.method = method;
    r.budget = budget;
    r.trial = trial;
    r.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    r.best_d2h = d2h_row(d, best_solution(traj));
    r.regret = regret(r.best_d2h, star);
    r.cov = coverage(trajectory_frontier(traj, d), truth);
    if (keep_curve) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : traj.steps) {
            best = std::min(best, s.d2h);
            r.regret_curve.push_back(regret(best, star));
        }
    }
    return r;
}

TierTable tier_table(const std::vector<CellResult>& results) {
    TierTable table;
    for (const auto& r : results)
        table.samples[r.dataset][label_of(r.method, r.budget)].push_back(r.best_d2h);
    for (const auto& [dataset, samples] : table.samples)
        table.tiers[dataset] = scott_knott(samples);
    return table;
}

namespace {

void write_summary(const fs::path& path, const std::vector<CellResult>& results,
                   const TierTable& table) {
    std::map<std::string, LabelInfo> labels;
    for (const auto& r : results)
        labels[label_of(r.method, r.budget)] = {r.method, r.budget};

    std::ofstream out(path, std::ios::binary);
    out << "# Benchmark summary\n\n";
    out << "Datasets: " << table.tiers.size() << "; labels: " << labels.size() << ".\n\n";

    out << "## Scott-Knott tiers per dataset\n\n| dataset |";
    for (const auto& [label, info] : labels) out << ' ' << label << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < labels.size(); ++i) out << "---|";
    out << '\n';
    for (const auto& [dataset, tiers] : table.tiers) {
        out << "| " << dataset << " |";
        for (const auto& [label, info] : labels) {
            const auto it = tiers.find(label);
            if (it == tiers.end())
                out << " - |";
            else
                out << ' ' << it->second << " |";
        }
        out << '\n';
    }

    out << "\n## Tier percentages\n\n"
        << "| label | tier 1 % | tier 1-2 % | tier 3+ % | median runtime ms |\n"
        << "|---|---|---|---|---|\n";
    for (const auto& [label, info] : labels) {
        int n = 0, t1 = 0, t12 = 0, t3 = 0;
        for (const auto& [dataset, tiers] : table.tiers) {
            const auto it = tiers.find(label);
            if (it == tiers.end()) continue;
            ++n;
            if (it->second == 1) ++t1;
            if (it->second <= 2) ++t12;
            if (it->second >= 3) ++t3;
        }
        std::vector<double> runtimes;
        for (const auto& r : results)
            if (label_of(r.method, r.budget) == label) runtimes.push_back(r.runtime_ms);
        if (n == 0) continue;
        const auto pct = [n](int k) {
            return static_cast<int>(std::lround(100.0 * k / n));
        };
        out << "| " << label << " | " << pct(t1) << " | " << pct(t12) << " | " << pct(t3) << " | "
            << fmt_double(median(runtimes)) << " |\n";
    }

    out << "\n## Win / Tie / Loss (reference = cheaper method)\n\n"
        << "| reference | opponent | W | T | L | W+T vs L |\n|---|---|---|---|---|---|\n";
    for (const auto& [ref_label, ref] : labels) {
        for (const auto& [opp_label, opp] : labels) {
            if (ref_label == opp_label) continue;
            const bool cheaper = ref.budget < opp.budget ||
                                 (ref.budget == opp.budget &&
                                  method_cost(ref.method) < method_cost(opp.method));
            if (!cheaper) continue;
            const WinTieLoss wtl = win_tie_loss(ref_label, opp_label, table);
            const int total = wtl.win + wtl.tie + wtl.loss;
            if (total == 0) continue;
            const int pct =
                static_cast<int>(std::lround(100.0 * (wtl.win + wtl.tie) / total));
            out << "| " << ref_label << " | " << opp_label << " | " << wtl.win << " | " << wtl.tie
                << " | " << wtl.loss << " | " << wtl.win + wtl.tie << " vs " << wtl.loss << " ("
                << pct << "%) |\n";
        }
    }
}

}  // namespace

int cmd_bench(const BenchConfig& cfg) {
    if (cfg.trials < 1 || cfg.budgets.empty() || cfg.methods.empty()) {
        std::cerr << "error: need trials >= 1, at least one budget and one method\n";
        return 2;
    }
    const auto datasets = load_all(cfg.data);
    if (datasets.empty()) {
        std::cerr << "error: no readable datasets\n";
        return 1;
    }

    fs::create_directories(cfg.out_dir);
    const fs::path raw_path = cfg.out_dir / "results.csv";

    // Resume: cells already present in the raw CSV keep their lines.
    std::map<std::string, std::string> existing;  // key -> verbatim line
    if (fs::exists(raw_path)) {
        std::ifstream in(raw_path);
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            const auto f = split(line, ',');
            if (f.size() < 4) continue;
            existing[cell_key(f[0], f[1], std::stoi(f[2]), std::stoi(f[3]))] = line;
        }
    }

    auto cells = enumerate_cells(datasets, cfg);
    std::erase_if(cells, [&](const Cell& c) {
        return existing.count(
            cell_key(datasets[c.dataset_idx].data.name(), c.method, c.budget, c.trial));
    });

    auto results = run_cells(datasets, cells, cfg.seed, cfg.workers, false);
    sort_results(results);

    std::map<std::string, std::string> lines = std::move(existing);
    for (const auto& r : results)
        lines[cell_key(r.dataset, r.method, r.budget, r.trial)] = raw_line(r);

    {
        std::ofstream out(raw_path, std::ios::binary);
        out << kRawHeader << '\n';
        std::vector<std::pair<std::string, std::string>> ordered(lines.begin(), lines.end());
        std::sort(ordered.begin(), ordered.end());
        for (const auto& [key, line] : ordered) out << line << '\n';
    }

    // Rebuild the tier table from the full file so resumed runs summarize
    // everything.
    std::vector<CellResult> all;
    {
        std::ifstream in(raw_path);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            const auto f = split(line, ',');
            if (f.size() < 13) continue;
            CellResult r;
            r.dataset = f[0];
            r.method = f[1];
            r.budget = std::stoi(f[2]);
            r.trial = std::stoi(f[3]);
            r.best_d2h = std::stod(f[4]);
            r.regret = std::stod(f[5]);
            r.runtime_ms = std::stod(f[6]);
            r.cov.true_igd = std::stod(f[7]);
            r.cov.true_gd = std::stod(f[8]);
            r.cov.hv = std::stod(f[9]);
            r.cov.spacing = std::stod(f[10]);
            r.cov.frontier_size = std::stoi(f[11]);
            r.cov.non_extreme_count = std::stoi(f[12]);
            all.push_back(std::move(r));
        }
    }
    if (all.empty()) {
        std::cerr << "error: no cells produced results\n";
        return 1;
    }
    write_summary(cfg.out_dir / "summary.md", all, tier_table(all));
    return 0;
}

int cmd_curves(const BenchConfig& cfg) {
    if (cfg.trials < 1 || cfg.budgets.empty() || cfg.methods.empty()) {
        std::cerr << "error: need trials >= 1, at least one budget and one method\n";
        return 2;
    }
    const auto datasets = load_all(cfg.data);
    if (datasets.empty()) {
        std::cerr << "error: no readable datasets\n";
        return 1;
    }
    const auto cells = enumerate_cells(datasets, cfg);
    auto results = run_cells(datasets, cells, cfg.seed, cfg.workers, true);
    if (results.empty()) {
        std::cerr << "error: no cells produced results\n";
        return 1;
    }
    sort_results(results);

    fs::create_directories(cfg.out_dir);
    std::ofstream out(cfg.out_dir / "curves.csv", std::ios::binary);
    out << "dataset,method,budget,step,regret_med,regret_q1,regret_q3\n";

    std::map<std::tuple<std::string, std::string, int>, std::vector<const CellResult*>> groups;
    for (const auto& r : results) groups[{r.dataset, r.method, r.budget}].push_back(&r);
    for (const auto& [key, group] : groups) {
        const auto& [dataset, method, budget] = key;
        for (int step = 0; step < budget; ++step) {
            std::vector<double> vals;
            for (const auto* r : group)
                if (step < static_cast<int>(r->regret_curve.size()))
                    vals.push_back(r->regret_curve[step]);
            if (vals.empty()) continue;
            out << dataset << ',' << method << ',' << budget << ',' << step + 1 << ','
                << fmt_double(median(vals)) << ',' << fmt_double(quantile(vals, 0.25)) << ','
                << fmt_double(quantile(vals, 0.75)) << '\n';
        }
    }
    return 0;
}

int cmd_front(const BenchConfig& cfg) {
    if (cfg.trials < 1 || cfg.budgets.empty() || cfg.methods.empty()) {
        std::cerr << "error: need trials >= 1, at least one budget and one method\n";
        return 2;
    }
    const auto datasets = load_all(cfg.data);
    if (datasets.empty()) {
        std::cerr << "error: no readable datasets\n";
        return 1;
    }
    const auto cells = enumerate_cells(datasets, cfg);
    auto results = run_cells(datasets, cells, cfg.seed, cfg.workers, false);
    if (results.empty()) {
        std::cerr << "error: no cells produced results\n";
        return 1;
    }
    sort_results(results);

    fs::create_directories(cfg.out_dir);
    std::ofstream out(cfg.out_dir / "front.csv", std::ios::binary);
    out << "dataset,method,budget,true_igd,true_gd,hv,spacing,frontier_size,non_extreme\n";

    std::map<std::tuple<std::string, std::string, int>, std::vector<const CellResult*>> groups;
    for (const auto& r : results) groups[{r.dataset, r.method, r.budget}].push_back(&r);
    for (const auto& [key, group] : groups) {
        const auto& [dataset, method, budget] = key;
        auto med = [&](auto pick) {
            std::vector<double> vals;
            for (const auto* r : group) vals.push_back(pick(*r));
            return median(vals);
        };
        out << dataset << ',' << method << ',' << budget << ','
            << fmt_double(med([](const CellResult& r) { return r.cov.true_igd; })) << ','
            << fmt_double(med([](const CellResult& r) { return r.cov.true_gd; })) << ','
            << fmt_double(med([](const CellResult& r) { return r.cov.hv; })) << ','
            << fmt_double(med([](const CellResult& r) { return r.cov.spacing; })) << ','
            << fmt_double(med([](const CellResult& r) {
                   return static_cast<double>(r.cov.frontier_size);
               }))
            << ','
            << fmt_double(med([](const CellResult& r) {
                   return static_cast<double>(r.cov.non_extreme_count);
               }))
            << '\n';
    }
    return 0;
}

namespace {

std::string flag_text(const std::optional<bool>& flag) {
    if (!flag) return "na";
    return *flag ? "true" : "false";
}

}  // namespace

int cmd_landscape(const std::vector<std::string>& data, const std::string& out_path,
                  std::uint64_t seed) {
    const auto paths = collect_dataset_paths(data);
    if (paths.empty()) {
        std::cerr << "error: no dataset files found\n";
        return 1;
    }

    std::vector<LandscapeReport> reports;
    for (const auto& path : paths) {
        try {
            reports.push_back(landscape_report(Dataset::load(path), seed));
        } catch (const std::exception& e) {
            std::cerr << "notice: skipping " << path.string() << ": " << e.what() << "\n";
        }
    }
    if (reports.empty()) {
        std::cerr << "error: all dataset files failed to load\n";
        return 1;
    }

    std::ostringstream os;
    os << "dataset,rows,pareto_fraction,d2h_rb,d2h_p,x_dist_rb,x_dist_p,"
          "concentrated_objective,concentrated_decision\n";
    std::vector<double> fracs, rbs, ps, xrbs, xps;
    int obj_true = 0, obj_n = 0, dec_true = 0, dec_n = 0;
    for (const auto& r : reports) {
        os << r.dataset << ',' << r.rows << ',' << fmt_double(r.pareto_fraction) << ','
           << fmt_double(r.d2h_rb) << ',' << fmt_double(r.d2h_p) << ','
           << fmt_double(r.x_dist_rb) << ',' << fmt_double(r.x_dist_p) << ','
           << flag_text(r.concentrated_objective) << ',' << flag_text(r.concentrated_decision)
           << '\n';
        fracs.push_back(r.pareto_fraction);
        if (r.concentrated_objective) {
            rbs.push_back(r.d2h_rb);
            ps.push_back(r.d2h_p);
            ++obj_n;
            if (*r.concentrated_objective) ++obj_true;
        }
        if (r.concentrated_decision) {
            xrbs.push_back(r.x_dist_rb);
            xps.push_back(r.x_dist_p);
            ++dec_n;
            if (*r.concentrated_decision) ++dec_true;
        }
    }
    os << "summary-median," << reports.size() << ',' << fmt_double(median(fracs)) << ','
       << fmt_double(rbs.empty() ? 0.0 : median(rbs)) << ','
       << fmt_double(ps.empty() ? 1.0 : median(ps)) << ','
       << fmt_double(xrbs.empty() ? 0.0 : median(xrbs)) << ','
       << fmt_double(xps.empty() ? 1.0 : median(xps)) << ','
       << fmt_double(obj_n ? static_cast<double>(obj_true) / obj_n : 0.0) << ','
       << fmt_double(dec_n ? static_cast<double>(dec_true) / dec_n : 0.0) << '\n';

    if (out_path.empty() || out_path == "-") {
        std::cout << os.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
        out << os.str();
    }
    return 0;
}

int cmd_explain(const std::string& path, int budget, std::uint64_t seed, std::ostream& out) {
    Dataset d = Dataset::load(path);
    SearchConfig cfg;
    cfg.budget = budget;
    cfg.seed = seed;
    Pool pool(d, budget);
    const Trajectory traj = run_ezr(pool, cfg);
    const auto tree = build_tree(traj, d);

    out << render_tree(*tree, d);
    out << "\nvariables used: " << tree_variable_count(*tree) << "\n";

    const int best = best_solution(traj);
    out << "best row: " << best << " (d2h " << fmt_double(d2h_row(d, best)) << ")\n";
    for (int j = 0; j < d.n_objectives(); ++j)
        out << "  " << d.objective_spec(j).name << " = " << fmt_double(d.y(best, j)) << "\n";
    return 0;
}

}  // namespace poolopt

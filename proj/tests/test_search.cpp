#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "helpers.hpp"
#include "poolopt/objectives.hpp"
#include "poolopt/rng.hpp"
#include "poolopt/search.hpp"
#include "poolopt/synth.hpp"
#include "poolopt/util.hpp"

using namespace poolopt;

namespace {

Dataset small_pool(int n, std::uint64_t seed) {
    return generate_uniform(n, 4, 2, seed);
}

SearchConfig cfg_of(int budget, std::uint64_t seed) {
    SearchConfig cfg;
    cfg.budget = budget;
    cfg.seed = seed;
    return cfg;
}

bool same_trajectory(const Trajectory& a, const Trajectory& b) {
    if (a.steps.size() != b.steps.size()) return false;
    for (std::size_t i = 0; i < a.steps.size(); ++i)
        if (a.steps[i].id != b.steps[i].id) return false;
    return true;
}

void check_ledger(const Trajectory& t, const Pool& pool) {
    CHECK(static_cast<int>(t.steps.size()) == pool.spent());
    CHECK(pool.spent() <= pool.budget());
    std::set<int> ids;
    for (const auto& s : t.steps) ids.insert(s.id);
    CHECK(ids.size() == t.steps.size());  // reveals are distinct
}

}  // namespace

TEST_CASE("ezr spends its budget exactly and reveals distinct rows") {
    const Dataset d = small_pool(300, 1);
    for (const int budget : {10, 50, 120}) {
        Pool pool(d, budget);
        const Trajectory t = run_ezr(pool, cfg_of(budget, 7));
        CHECK(static_cast<int>(t.steps.size()) == budget);
        check_ledger(t, pool);
    }
}

TEST_CASE("ezr saturates the candidate draw when fewer than 128 rows remain") {
    const Dataset d = small_pool(40, 2);  // every draw after warmup sees < 128 rows
    Pool pool(d, 39);
    const Trajectory t = run_ezr(pool, cfg_of(39, 3));
    CHECK(static_cast<int>(t.steps.size()) == 39);
}

TEST_CASE("ezr is deterministic in (dataset, budget, seed)") {
    const Dataset d = small_pool(200, 3);
    Pool p1(d, 60), p2(d, 60), p3(d, 60);
    const Trajectory a = run_ezr(p1, cfg_of(60, 11));
    const Trajectory b = run_ezr(p2, cfg_of(60, 11));
    const Trajectory c = run_ezr(p3, cfg_of(60, 12));
    CHECK(same_trajectory(a, b));
    CHECK_FALSE(same_trajectory(a, c));
}

TEST_CASE("ezr archive keeps the ceil(sqrt(spent)) lowest-d2h rows") {
    const Dataset d = small_pool(250, 4);
    for (const int budget : {5, 9, 17, 40}) {
        Pool pool(d, budget);
        const Trajectory t = run_ezr(pool, cfg_of(budget, 5));

        // Independent reconstruction from the step log.
        std::vector<std::pair<double, int>> ranked;
        for (const auto& s : t.steps) ranked.emplace_back(s.d2h, s.id);
        std::sort(ranked.begin(), ranked.end());
        const int cap = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(budget))));
        std::vector<int> expect_best;
        for (int i = 0; i < cap; ++i) expect_best.push_back(ranked[i].second);

        CHECK(t.archive.best == expect_best);
        CHECK(t.archive.best.size() + t.archive.rest.size() == t.steps.size());

        double max_best = -1.0, min_rest = 2.0;
        std::set<int> best_set(t.archive.best.begin(), t.archive.best.end());
        for (const auto& s : t.steps) {
            if (best_set.count(s.id))
                max_best = std::max(max_best, s.d2h);
            else
                min_rest = std::min(min_rest, s.d2h);
        }
        CHECK(max_best <= min_rest);
    }
}

TEST_CASE("ezr preconditions") {
    const Dataset d = small_pool(20, 5);
    Pool p1(d, 4);
    CHECK_THROWS_AS(run_ezr(p1, cfg_of(4, 1)), Error);  // budget < warmup + 1

    const Dataset tiny = Dataset::parse("tiny", {"x", "y-"},
                                        {{"1", "1"}, {"2", "2"}, {"3", "3"}, {"4", "4"}});
    Pool p2(tiny, 5);
    CHECK_THROWS_AS(run_ezr(p2, cfg_of(5, 1)), Error);  // pool smaller than warmup+1
}

TEST_CASE("random exhausts the pool down to the dataset optimum") {
    const Dataset d = small_pool(80, 6);
    Pool pool(d, 80);
    const Trajectory t = run_random(pool, cfg_of(80, 9));
    CHECK(static_cast<int>(t.steps.size()) == 80);
    check_ledger(t, pool);
    double best = 1e9;
    for (const auto& s : t.steps) best = std::min(best, s.d2h);
    CHECK(best == doctest::Approx(d2h_star(d)).epsilon(1e-15));
}

TEST_CASE("random determinism and overdraft error") {
    const Dataset d = small_pool(50, 7);
    Pool p1(d, 20), p2(d, 20), p3(d, 51);
    const Trajectory a = run_random(p1, cfg_of(20, 13));
    const Trajectory b = run_random(p2, cfg_of(20, 13));
    CHECK(same_trajectory(a, b));
    CHECK_THROWS_AS(run_random(p3, cfg_of(51, 13)), Error);
}

TEST_CASE("nsga2 budget equal to population returns right after initialization") {
    const Dataset d = small_pool(60, 8);
    Pool pool(d, 10);
    const Trajectory t = run_nsga2(pool, cfg_of(10, 21));
    CHECK(static_cast<int>(t.steps.size()) == 10);
    CHECK(t.archive.best.size() == 10);
}

TEST_CASE("nsga2 spends exactly its budget in population-size generations") {
    const Dataset d = small_pool(400, 9);
    Pool pool(d, 200);
    const Trajectory t = run_nsga2(pool, cfg_of(200, 22));
    CHECK(static_cast<int>(t.steps.size()) == 200);
    check_ledger(t, pool);
    CHECK(t.archive.best.size() == 10);  // final population, pop=10 at budget 200
}

TEST_CASE("nsga2 stops gracefully when the pool is exhausted mid-run") {
    const Dataset d = small_pool(12, 10);
    Pool pool(d, 12);
    const Trajectory t = run_nsga2(pool, cfg_of(12, 23));
    CHECK(static_cast<int>(t.steps.size()) == 12);  // every row revealed once

    Pool wide(d, 12);
    SearchConfig c = cfg_of(12, 24);
    const Trajectory t2 = run_nsga2(wide, c);
    std::set<int> ids;
    for (const auto& s : t2.steps) ids.insert(s.id);
    CHECK(ids.size() == 12u);
}

TEST_CASE("nsga2 determinism and preconditions") {
    const Dataset d = small_pool(150, 11);
    Pool p1(d, 60), p2(d, 60);
    const Trajectory a = run_nsga2(p1, cfg_of(60, 31));
    const Trajectory b = run_nsga2(p2, cfg_of(60, 31));
    CHECK(same_trajectory(a, b));

    Pool p3(d, 8);
    CHECK_THROWS_AS(run_nsga2(p3, cfg_of(8, 31)), Error);  // budget < population
    SearchConfig odd = cfg_of(60, 31);
    odd.nsga_population = 7;
    Pool p4(d, 60);
    CHECK_THROWS_AS(run_nsga2(p4, odd), Error);  // population must be even
}

TEST_CASE("nsga2 picks the larger population at the 1000 budget") {
    SearchConfig cfg;
    CHECK(cfg.population_for(50) == 10);
    CHECK(cfg.population_for(200) == 10);
    CHECK(cfg.population_for(1000) == 20);
    cfg.nsga_population = 16;
    CHECK(cfg.population_for(1000) == 16);
}

TEST_CASE("trajectory_frontier basics") {
    const Dataset d = Dataset::parse("t", {"x", "a-", "b-"},
                                     {{"1", "1", "3"},
                                      {"1", "2", "2"},
                                      {"1", "3", "1"},
                                      {"1", "4", "4"}});
    Trajectory one;
    one.method = "manual";
    one.steps.push_back({0, 3, d2h_row(d, 3)});
    const Frontier f1 = trajectory_frontier(one, d);
    CHECK(f1.ids == std::vector<int>{3});

    // A trajectory holding the whole true front has igd 0 against it.
    Trajectory all;
    all.method = "manual";
    for (int id = 0; id < 4; ++id) all.steps.push_back({id, id, d2h_row(d, id)});
    const Frontier f2 = trajectory_frontier(all, d);
    CHECK(igd(f2, true_front(d)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f2.ids == std::vector<int>{0, 1, 2});
}

TEST_CASE("best_solution tie-breaks on the lower id") {
    Trajectory t;
    t.steps.push_back({0, 5, 0.4});
    CHECK(best_solution(t) == 5);
    t.steps.push_back({1, 2, 0.4});
    CHECK(best_solution(t) == 2);
    t.steps.push_back({2, 9, 0.1});
    CHECK(best_solution(t) == 9);

    const Dataset d = small_pool(30, 12);
    Pool pool(d, 30);
    const Trajectory full = run_random(pool, cfg_of(30, 3));
    int argmin = 0;
    for (int r = 1; r < d.rows(); ++r)
        if (d2h_row(d, r) < d2h_row(d, argmin)) argmin = r;
    CHECK(best_solution(full) == argmin);
}

TEST_CASE("searchers work on datasets with categorical and missing cells") {
    // Mixed columns force the centroid mode/mean paths and the pessimistic
    // distance rule through both optimizers.
    std::vector<std::vector<std::string>> cells;
    Rng rng(77);
    const char* colors[3] = {"red", "green", "blue"};
    for (int i = 0; i < 60; ++i) {
        std::vector<std::string> row;
        row.push_back(rng.unit() < 0.1 ? "?" : fmt_double(rng.unit()));
        row.push_back(rng.unit() < 0.1 ? "?" : colors[rng.index(3)]);
        row.push_back(fmt_double(rng.unit()));
        row.push_back(fmt_double(rng.unit()));
        cells.push_back(std::move(row));
    }
    const Dataset d = Dataset::parse("mixed", {"level", "color", "cost-", "gain+"}, cells);

    Pool p1(d, 30);
    const Trajectory ezr = run_ezr(p1, cfg_of(30, 5));
    CHECK(static_cast<int>(ezr.steps.size()) == 30);

    Pool p2(d, 30);
    const Trajectory nsga = run_nsga2(p2, cfg_of(30, 5));
    CHECK(static_cast<int>(nsga.steps.size()) == 30);
}

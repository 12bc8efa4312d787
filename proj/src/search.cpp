#include "poolopt/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "poolopt/objectives.hpp"
#include "poolopt/rng.hpp"

namespace poolopt {

std::vector<double> Trajectory::step_d2h() const {
    std::vector<double> out(steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) out[i] = steps[i].d2h;
    return out;
}

std::vector<int> Trajectory::revealed_ids() const {
    std::vector<int> out(steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) out[i] = steps[i].id;
    return out;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<int> all_unlabeled(const Pool& pool) {
    std::vector<int> ids;
    ids.reserve(pool.dataset().rows());
    for (int r = 0; r < pool.dataset().rows(); ++r)
        if (!pool.is_revealed(r)) ids.push_back(r);
    return ids;
}

// (d2h, id) ascending; elite prefix of size cap is the Best archive.
struct Ranked {
    std::vector<std::pair<double, int>> order;

    void insert(double d2h, int id) {
        const auto entry = std::make_pair(d2h, id);
        order.insert(std::upper_bound(order.begin(), order.end(), entry), entry);
    }
    static int cap(int spent) {
        return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(spent))));
    }
    Archive archive(int spent) const {
        Archive a;
        const int b = std::min<int>(cap(spent), static_cast<int>(order.size()));
        for (int i = 0; i < static_cast<int>(order.size()); ++i)
            (i < b ? a.best : a.rest).push_back(order[i].second);
        return a;
    }
};

// Per-column mean of normalized numerics, per-column mode of categories
// (ties to the lexicographically smallest token). Columns with no present
// value stay missing.
DecisionPoint centroid(const Dataset& d, const std::vector<int>& members) {
    const int k = d.n_decisions();
    DecisionPoint c;
    c.num.assign(k, kNaN);
    c.code.assign(k, -1);
    for (int i = 0; i < k; ++i) {
        if (d.x_is_numeric(i)) {
            double sum = 0.0;
            int n = 0;
            for (const int r : members) {
                if (d.x_missing(r, i)) continue;
                sum += d.x_norm(r, i);
                ++n;
            }
            if (n > 0) c.num[i] = sum / n;
        } else {
            std::vector<int> counts(d.n_categories(i), 0);
            for (const int r : members) {
                const int code = d.x_code(r, i);
                if (code >= 0) ++counts[code];
            }
            int best = -1, best_count = 0;
            for (int code = 0; code < static_cast<int>(counts.size()); ++code) {
                if (counts[code] > best_count) {
                    best = code;
                    best_count = counts[code];
                }
            }
            c.code[i] = best;
        }
    }
    return c;
}

int reveal_step(Pool& pool, Trajectory& t, int id) {
    const auto y = pool.reveal(id);
    const double score = d2h(pool.dataset(), y);
    t.steps.push_back({static_cast<int>(t.steps.size()), id, score});
    return static_cast<int>(t.steps.size()) - 1;
}

void erase_swap(std::vector<int>& v, std::size_t i) {
    v[i] = v.back();
    v.pop_back();
}

}  // namespace

Trajectory run_ezr(Pool& pool, const SearchConfig& cfg) {
    const Dataset& d = pool.dataset();
    if (cfg.budget < cfg.warmup + 1) throw Error("ezr: budget below warmup+1");
    if (cfg.acquisition_pool < 1) throw Error("ezr: acquisition pool must be >= 1");

    Trajectory t;
    t.method = "ezr";
    t.budget = cfg.budget;
    t.seed = cfg.seed;

    Rng rng(cfg.seed);
    auto unlabeled = all_unlabeled(pool);
    if (static_cast<int>(unlabeled.size()) < cfg.warmup + 1)
        throw Error("ezr: pool smaller than warmup+1 unlabeled rows");

    Ranked ranked;
    for (int i = 0; i < cfg.warmup; ++i) {
        const std::size_t j = rng.index(unlabeled.size());
        const int id = unlabeled[j];
        erase_swap(unlabeled, j);
        const int s = reveal_step(pool, t, id);
        ranked.insert(t.steps[s].d2h, id);
    }

    while (pool.spent() < cfg.budget && !unlabeled.empty()) {
        const std::size_t m =
            std::min<std::size_t>(static_cast<std::size_t>(cfg.acquisition_pool), unlabeled.size());
        rng.partial_shuffle(unlabeled, m);

        const Archive arch = ranked.archive(pool.spent());
        const DecisionPoint mu_best = centroid(d, arch.best);
        const DecisionPoint mu_rest = centroid(d, arch.rest);
        const bool have_rest = !arch.rest.empty();

        // Candidate scan is x-space only: zero reveals happen here.
        std::size_t pick = 0;
        double best_margin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const double db = x_distance(d, unlabeled[i], mu_best);
            const double dr = have_rest ? x_distance(d, unlabeled[i], mu_rest)
                                        : std::numeric_limits<double>::infinity();
            if (db < dr) {
                pick = i;
                break;
            }
            if (db - dr < best_margin) {
                best_margin = db - dr;
                pick = i;
            }
        }

        const int id = unlabeled[pick];
        erase_swap(unlabeled, pick);
        const int s = reveal_step(pool, t, id);
        ranked.insert(t.steps[s].d2h, id);
    }

    t.archive = ranked.archive(pool.spent());
    return t;
}

Trajectory run_random(Pool& pool, const SearchConfig& cfg) {
    Trajectory t;
    t.method = "random";
    t.budget = cfg.budget;
    t.seed = cfg.seed;

    Rng rng(cfg.seed);
    auto unlabeled = all_unlabeled(pool);
    if (cfg.budget > static_cast<int>(unlabeled.size()))
        throw Error("random: budget exceeds pool size");

    Ranked ranked;
    for (int i = 0; i < cfg.budget; ++i) {
        const std::size_t j = rng.index(unlabeled.size());
        const int id = unlabeled[j];
        erase_swap(unlabeled, j);
        const int s = reveal_step(pool, t, id);
        ranked.insert(t.steps[s].d2h, id);
    }
    t.archive = ranked.archive(pool.spent());
    return t;
}

namespace {

// Fronts and crowding over a set of minimized objective vectors.
struct RankInfo {
    std::vector<int> rank;
    std::vector<double> crowding;
};

RankInfo rank_and_crowd(const std::vector<std::vector<double>>& ys) {
    const int n = static_cast<int>(ys.size());
    RankInfo info;
    info.rank.assign(n, 0);
    info.crowding.assign(n, 0.0);
    if (n == 0) return info;
    const int m = static_cast<int>(ys[0].size());

    // Fast non-dominated sort.
    std::vector<std::vector<int>> dominated(n);
    std::vector<int> dom_count(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (dominates_min(ys[i], ys[j])) {
                dominated[i].push_back(j);
                ++dom_count[j];
            } else if (dominates_min(ys[j], ys[i])) {
                dominated[j].push_back(i);
                ++dom_count[i];
            }
        }
    }
    std::vector<int> current;
    for (int i = 0; i < n; ++i)
        if (dom_count[i] == 0) current.push_back(i);
    int level = 0;
    std::vector<std::vector<int>> fronts;
    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<int> next;
        for (const int i : current) {
            info.rank[i] = level;
            for (const int j : dominated[i]) {
                if (--dom_count[j] == 0) next.push_back(j);
            }
        }
        current = std::move(next);
        ++level;
    }

    for (const auto& front : fronts) {
        if (front.size() < 3) {
            for (const int i : front) info.crowding[i] = std::numeric_limits<double>::infinity();
            continue;
        }
        for (int j = 0; j < m; ++j) {
            std::vector<int> order(front);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                if (ys[a][j] != ys[b][j]) return ys[a][j] < ys[b][j];
                return a < b;
            });
            const double lo = ys[order.front()][j], hi = ys[order.back()][j];
            info.crowding[order.front()] = std::numeric_limits<double>::infinity();
            info.crowding[order.back()] = std::numeric_limits<double>::infinity();
            if (hi <= lo) continue;
            for (std::size_t p = 1; p + 1 < order.size(); ++p)
                info.crowding[order[p]] += (ys[order[p + 1]][j] - ys[order[p - 1]][j]) / (hi - lo);
        }
    }
    return info;
}

struct NsgaOps {
    const Dataset& d;
    const SearchConfig& cfg;
    Rng& rng;
    double pm;  // per-column mutation probability

    double sbx_pair(double v1, double v2, bool first_child) {
        const double u = rng.unit();
        const double eta = cfg.crossover_eta;
        const double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                     : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
        const double c = first_child ? 0.5 * ((1.0 + beta) * v1 + (1.0 - beta) * v2)
                                     : 0.5 * ((1.0 - beta) * v1 + (1.0 + beta) * v2);
        return std::clamp(c, 0.0, 1.0);
    }

    double poly_mutate(double v) {
        const double u = rng.unit();
        const double eta = cfg.mutation_eta;
        const double delta = u < 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0)) - 1.0
                                     : 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (eta + 1.0));
        return std::clamp(v + delta, 0.0, 1.0);
    }

    std::pair<DecisionPoint, DecisionPoint> make_offspring(const DecisionPoint& p1,
                                                           const DecisionPoint& p2) {
        DecisionPoint c1 = p1, c2 = p2;
        const int k = d.n_decisions();
        if (rng.unit() < cfg.crossover_prob) {
            for (int i = 0; i < k; ++i) {
                if (d.x_is_numeric(i)) {
                    const double v1 = p1.num[i], v2 = p2.num[i];
                    if (std::isnan(v1) || std::isnan(v2)) {
                        // One-sided values pass through unchanged.
                        const double present = std::isnan(v1) ? v2 : v1;
                        c1.num[i] = present;
                        c2.num[i] = present;
                        continue;
                    }
                    if (rng.unit() < 0.5 && std::abs(v1 - v2) > 1e-14) {
                        c1.num[i] = sbx_pair(v1, v2, true);
                        c2.num[i] = sbx_pair(v1, v2, false);
                    }
                } else {
                    if (rng.unit() < 0.5) std::swap(c1.code[i], c2.code[i]);
                }
            }
        }
        mutate(c1);
        mutate(c2);
        return {std::move(c1), std::move(c2)};
    }

    void mutate(DecisionPoint& p) {
        const int k = d.n_decisions();
        for (int i = 0; i < k; ++i) {
            if (rng.unit() >= pm) continue;
            if (d.x_is_numeric(i)) {
                p.num[i] = std::isnan(p.num[i]) ? rng.unit() : poly_mutate(p.num[i]);
            } else if (d.n_categories(i) > 0) {
                p.code[i] = static_cast<int>(rng.index(d.n_categories(i)));
            }
        }
    }
};

// Nearest not-yet-revealed row; ties to the lowest id.
int snap_to_pool(const Dataset& d, const DecisionPoint& x, const std::vector<int>& unlabeled) {
    int best_id = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const int id : unlabeled) {
        const double dist = x_distance(d, id, x);
        if (dist < best_dist || (dist == best_dist && id < best_id)) {
            best_dist = dist;
            best_id = id;
        }
    }
    return best_id;
}

}  // namespace

Trajectory run_nsga2(Pool& pool, const SearchConfig& cfg) {
    const Dataset& d = pool.dataset();
    const int pop_size = cfg.population_for(cfg.budget);
    if (pop_size < 2 || pop_size % 2 != 0) throw Error("nsga2: population must be even and >= 2");
    if (cfg.budget < pop_size) throw Error("nsga2: budget below population size");
    if (d.rows() < pop_size) throw Error("nsga2: pool smaller than population");

    Trajectory t;
    t.method = "nsga2";
    t.budget = cfg.budget;
    t.seed = cfg.seed;

    Rng rng(cfg.seed);
    auto unlabeled = all_unlabeled(pool);

    struct Member {
        int id;
        DecisionPoint x;
        std::vector<double> y_min;
    };
    std::vector<Member> population;

    auto admit = [&](int id) {
        population.push_back({id, decision_point(d, id), d.y_min_norm(id)});
    };

    for (int i = 0; i < pop_size; ++i) {
        const std::size_t j = rng.index(unlabeled.size());
        const int id = unlabeled[j];
        erase_swap(unlabeled, j);
        reveal_step(pool, t, id);
        admit(id);
    }

    const double pm = cfg.mutation_prob > 0.0 ? cfg.mutation_prob
                                              : 1.0 / static_cast<double>(d.n_decisions());
    NsgaOps ops{d, cfg, rng, pm};

    while (pool.spent() < cfg.budget && !unlabeled.empty()) {
        // Parents come from the generation-start population; offspring
        // admitted below only compete in environmental selection.
        const std::size_t n_parents = population.size();
        std::vector<std::vector<double>> ys(n_parents);
        for (std::size_t i = 0; i < n_parents; ++i) ys[i] = population[i].y_min;
        const RankInfo info = rank_and_crowd(ys);

        auto tournament = [&]() -> DecisionPoint {
            const int a = static_cast<int>(rng.index(n_parents));
            const int b = static_cast<int>(rng.index(n_parents));
            if (info.rank[a] != info.rank[b])
                return population[info.rank[a] < info.rank[b] ? a : b].x;
            if (info.crowding[a] != info.crowding[b])
                return population[info.crowding[a] > info.crowding[b] ? a : b].x;
            return population[population[a].id <= population[b].id ? a : b].x;
        };

        for (std::size_t pair = 0; pair * 2 < static_cast<std::size_t>(pop_size); ++pair) {
            if (pool.spent() >= cfg.budget || unlabeled.empty()) break;
            const DecisionPoint p1 = tournament();
            const DecisionPoint p2 = tournament();
            auto [c1, c2] = ops.make_offspring(p1, p2);
            for (const DecisionPoint* child : {&c1, &c2}) {
                if (pool.spent() >= cfg.budget || unlabeled.empty()) break;
                int id = snap_to_pool(d, *child, unlabeled);
                if (id < 0) id = unlabeled[rng.index(unlabeled.size())];
                const auto it = std::find(unlabeled.begin(), unlabeled.end(), id);
                erase_swap(unlabeled, static_cast<std::size_t>(it - unlabeled.begin()));
                reveal_step(pool, t, id);
                admit(id);
            }
        }

        // Environmental selection over parents + offspring.
        if (population.size() > static_cast<std::size_t>(pop_size)) {
            std::vector<std::vector<double>> all_ys(population.size());
            for (std::size_t i = 0; i < population.size(); ++i) all_ys[i] = population[i].y_min;
            const RankInfo sel = rank_and_crowd(all_ys);
            std::vector<std::size_t> order(population.size());
            std::iota(order.begin(), order.end(), 0u);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (sel.rank[a] != sel.rank[b]) return sel.rank[a] < sel.rank[b];
                if (sel.crowding[a] != sel.crowding[b]) return sel.crowding[a] > sel.crowding[b];
                return population[a].id < population[b].id;
            });
            std::vector<Member> next;
            next.reserve(pop_size);
            for (int i = 0; i < pop_size; ++i) next.push_back(std::move(population[order[i]]));
            population = std::move(next);
        }
    }

    std::vector<int> pop_ids;
    for (const auto& m : population) pop_ids.push_back(m.id);
    std::sort(pop_ids.begin(), pop_ids.end());
    t.archive.best = pop_ids;
    for (const auto& step : t.steps) {
        if (!std::binary_search(pop_ids.begin(), pop_ids.end(), step.id))
            t.archive.rest.push_back(step.id);
    }
    std::sort(t.archive.rest.begin(), t.archive.rest.end());
    return t;
}

Frontier trajectory_frontier(const Trajectory& t, const Dataset& d) {
    if (t.steps.empty()) throw Error("trajectory_frontier: empty trajectory");
    std::vector<int> ids = t.revealed_ids();
    std::sort(ids.begin(), ids.end());
    std::vector<std::vector<double>> pts(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) pts[i] = d.y_min_norm(ids[i]);
    return nondominated(std::move(pts), std::move(ids), t.method + "-trajectory");
}

int best_solution(const Trajectory& t) {
    if (t.steps.empty()) throw Error("best_solution: empty trajectory");
    int best_id = t.steps[0].id;
    double best = t.steps[0].d2h;
    for (const auto& s : t.steps) {
        if (s.d2h < best || (s.d2h == best && s.id < best_id)) {
            best = s.d2h;
            best_id = s.id;
        }
    }
    return best_id;
}

}  // namespace poolopt

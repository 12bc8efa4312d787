#include "poolopt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "poolopt/objectives.hpp"
#include "poolopt/pareto.hpp"
#include "poolopt/rng.hpp"
#include "poolopt/util.hpp"

namespace poolopt {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

MannWhitney mann_whitney(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw Error("mann_whitney: empty sample");
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;

    // Midranks over the pooled sample.
    std::vector<std::pair<double, int>> pooled;  // (value, 0=a / 1=b)
    pooled.reserve(n);
    for (const double v : a) pooled.emplace_back(v, 0);
    for (const double v : b) pooled.emplace_back(v, 1);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    double rank_sum_a = 0.0;
    double tie_term = 0.0;  // sum of t^3 - t over tie groups
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && pooled[j].first == pooled[i].first) ++j;
        const double t = static_cast<double>(j - i);
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].second == 0) rank_sum_a += midrank;
        if (t > 1.0) tie_term += t * t * t - t;
        i = j;
    }

    const double u = rank_sum_a - static_cast<double>(na) * (static_cast<double>(na) + 1.0) / 2.0;
    const double prod = static_cast<double>(na) * static_cast<double>(nb);

    MannWhitney result;
    result.u = u;
    result.rb = (2.0 * u - prod) / prod;

    const double dn = static_cast<double>(n);
    const double var =
        prod / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
    if (var <= 0.0) {
        result.p = 1.0;
        return result;
    }
    const double mu = prod / 2.0;
    double z = u - mu;
    // Continuity correction toward zero.
    if (z > 0.5)
        z -= 0.5;
    else if (z < -0.5)
        z += 0.5;
    else
        z = 0.0;
    z /= std::sqrt(var);
    result.p = std::clamp(2.0 * (1.0 - normal_cdf(std::abs(z))), 0.0, 1.0);
    return result;
}

double cliffs_delta(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw Error("cliffs_delta: empty sample");
    // Rank-based count, O((n+m) log(n+m)) rather than all pairs.
    return mann_whitney(a, b).rb;
}

double bootstrap_same(const std::vector<double>& a, const std::vector<double>& b,
                      int n_resamples, std::uint64_t seed) {
    if (a.empty() || b.empty()) throw Error("bootstrap_same: empty sample");
    const double observed = std::abs(mean_of(a) - mean_of(b));

    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());

    Rng rng(seed);
    int at_least = 0;
    for (int r = 0; r < n_resamples; ++r) {
        double sa = 0.0, sb = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) sa += pooled[rng.index(pooled.size())];
        for (std::size_t i = 0; i < b.size(); ++i) sb += pooled[rng.index(pooled.size())];
        const double diff =
            std::abs(sa / static_cast<double>(a.size()) - sb / static_cast<double>(b.size()));
        if (diff >= observed) ++at_least;
    }
    return static_cast<double>(at_least + 1) / static_cast<double>(n_resamples + 1);
}

namespace {

struct SkGroup {
    std::string label;
    const std::vector<double>* sample;
    double med;
    std::vector<double> sorted;  // label-free tie-break key
};

void sk_split(const std::vector<SkGroup>& groups, std::size_t lo, std::size_t hi,
              int n_resamples, std::uint64_t seed, int& next_tier,
              std::map<std::string, int>& out) {
    const std::size_t n = hi - lo;
    if (n >= 2) {
        // Split maximizing between-group sum of squares of medians.
        double total = 0.0;
        for (std::size_t i = lo; i < hi; ++i) total += groups[i].med;
        const double overall = total / static_cast<double>(n);

        std::size_t best_cut = 0;
        double best_ss = -1.0;
        double left_sum = 0.0;
        for (std::size_t cut = 1; cut < n; ++cut) {
            left_sum += groups[lo + cut - 1].med;
            const double right_sum = total - left_sum;
            const double ml = left_sum / static_cast<double>(cut);
            const double mr = right_sum / static_cast<double>(n - cut);
            const double ss = static_cast<double>(cut) * (ml - overall) * (ml - overall) +
                              static_cast<double>(n - cut) * (mr - overall) * (mr - overall);
            if (ss > best_ss) {
                best_ss = ss;
                best_cut = cut;
            }
        }

        std::vector<double> left, right;
        for (std::size_t i = lo; i < lo + best_cut; ++i)
            left.insert(left.end(), groups[i].sample->begin(), groups[i].sample->end());
        for (std::size_t i = lo + best_cut; i < hi; ++i)
            right.insert(right.end(), groups[i].sample->begin(), groups[i].sample->end());

        const double p = bootstrap_same(left, right, n_resamples, seed + lo * 7919 + hi);
        const double delta = std::abs(cliffs_delta(left, right));
        if (p < kAlpha && delta >= kNegligibleDelta) {
            sk_split(groups, lo, lo + best_cut, n_resamples, seed, next_tier, out);
            sk_split(groups, lo + best_cut, hi, n_resamples, seed, next_tier, out);
            return;
        }
    }
    const int tier = next_tier++;
    for (std::size_t i = lo; i < hi; ++i) out[groups[i].label] = tier;
}

}  // namespace

std::map<std::string, int> scott_knott(const std::map<std::string, std::vector<double>>& samples,
                                       int n_resamples, std::uint64_t seed) {
    std::map<std::string, int> out;
    if (samples.empty()) return out;

    std::vector<SkGroup> groups;
    groups.reserve(samples.size());
    for (const auto& [label, sample] : samples) {
        if (sample.empty()) throw Error("scott_knott: empty sample for " + label);
        SkGroup g;
        g.label = label;
        g.sample = &sample;
        g.sorted = sample;
        std::sort(g.sorted.begin(), g.sorted.end());
        g.med = median(sample);
        groups.push_back(std::move(g));
    }
    // Order by median; ties break on the sorted sample itself so tiers
    // depend on distributions, not labels.
    std::sort(groups.begin(), groups.end(), [](const SkGroup& a, const SkGroup& b) {
        if (a.med != b.med) return a.med < b.med;
        if (a.sorted != b.sorted) return a.sorted < b.sorted;
        return a.label < b.label;
    });

    int next_tier = 1;
    sk_split(groups, 0, groups.size(), n_resamples, seed, next_tier, out);
    return out;
}

WinTieLoss win_tie_loss(const std::string& reference, const std::string& opponent,
                        const TierTable& table) {
    WinTieLoss out;
    for (const auto& [dataset, tiers] : table.tiers) {
        const auto r = tiers.find(reference);
        const auto o = tiers.find(opponent);
        if (r == tiers.end() || o == tiers.end()) {
            out.skipped.push_back(dataset);
            continue;
        }
        if (r->second < o->second)
            ++out.win;
        else if (r->second == o->second)
            ++out.tie;
        else
            ++out.loss;
    }
    return out;
}

namespace {

// Distances between disjoint random pairs of the given rows. Each row is
// used at most once, so the distances are independent samples and the
// rank test's variance holds; all-pairs distances share endpoints and
// reject far too often.
std::vector<double> paired_distances(const Dataset& d, std::vector<int> rows, Rng& rng) {
    rng.partial_shuffle(rows, rows.size());
    std::vector<double> out;
    out.reserve(rows.size() / 2);
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2)
        out.push_back(x_distance(d, rows[i], decision_point(d, rows[i + 1])));
    return out;
}

}  // namespace

LandscapeReport landscape_report(const Dataset& d, std::uint64_t seed) {
    LandscapeReport rep;
    rep.dataset = d.name();
    rep.rows = d.rows();

    const Frontier front = true_front(d);
    rep.pareto_fraction = static_cast<double>(front.size()) / static_cast<double>(d.rows());

    std::vector<char> on_front(d.rows(), 0);
    for (const int id : front.ids) on_front[id] = 1;
    std::vector<int> pareto_rows = front.ids;
    std::vector<int> other_rows;
    for (int r = 0; r < d.rows(); ++r)
        if (!on_front[r]) other_rows.push_back(r);

    if (pareto_rows.size() < 2 || other_rows.size() < 2) return rep;  // null flags

    std::vector<double> d2h_front, d2h_other;
    for (const int r : pareto_rows) d2h_front.push_back(d2h_row(d, r));
    for (const int r : other_rows) d2h_other.push_back(d2h_row(d, r));
    const MannWhitney obj = mann_whitney(d2h_front, d2h_other);
    rep.d2h_rb = obj.rb;
    rep.d2h_p = obj.p;
    rep.concentrated_objective = obj.p < kAlpha && obj.rb < 0.0;

    // Cap both sides at 200 rows; the non-Pareto side is an equal-size
    // uniform sample.
    Rng rng(seed);
    constexpr std::size_t kCap = 200;
    if (pareto_rows.size() > kCap) {
        rng.partial_shuffle(pareto_rows, kCap);
        pareto_rows.resize(kCap);
        std::sort(pareto_rows.begin(), pareto_rows.end());
    }
    rng.partial_shuffle(other_rows, pareto_rows.size());
    other_rows.resize(pareto_rows.size());
    std::sort(other_rows.begin(), other_rows.end());

    const MannWhitney dec =
        mann_whitney(paired_distances(d, pareto_rows, rng), paired_distances(d, other_rows, rng));
    rep.x_dist_rb = dec.rb;
    rep.x_dist_p = dec.p;
    rep.concentrated_decision = dec.p < kAlpha && dec.rb < 0.0;
    return rep;
}

}  // namespace poolopt

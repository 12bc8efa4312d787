#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "poolopt/pareto.hpp"
#include "poolopt/rng.hpp"
#include "poolopt/util.hpp"

using namespace poolopt;

namespace {

Frontier front_of(std::vector<std::vector<double>> pts) {
    std::vector<int> ids(pts.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    Frontier f;
    f.ids = std::move(ids);
    f.points = std::move(pts);
    f.source = "test";
    return f;
}

Dataset random_min_dataset(Rng& rng, int n, int m) {
    std::vector<std::string> header{"x"};
    for (int j = 0; j < m; ++j) header.push_back("o" + std::to_string(j) + "-");
    std::vector<std::vector<std::string>> cells;
    for (int r = 0; r < n; ++r) {
        std::vector<std::string> row{fmt_double(rng.unit())};
        // Coarse grid values so duplicates and ties actually happen.
        for (int j = 0; j < m; ++j)
            row.push_back(std::to_string(static_cast<int>(rng.index(8))));
        cells.push_back(std::move(row));
    }
    return Dataset::parse("rnd", header, cells);
}

}  // namespace

TEST_CASE("dominance basics") {
    const Dataset d =
        Dataset::parse("t", {"x", "a-", "b-"}, {{"1", "0", "0"}, {"1", "9", "9"}});
    CHECK_FALSE(dominates(d, {1, 1}, {1, 1}));
    CHECK(dominates(d, {1, 1}, {2, 2}));
    CHECK_FALSE(dominates(d, {1, 3}, {2, 2}));
    CHECK_FALSE(dominates(d, {2, 2}, {1, 3}));
    // Direction awareness: maximize flips the comparison.
    const Dataset dm =
        Dataset::parse("t2", {"x", "a+", "b-"}, {{"1", "0", "0"}, {"1", "9", "9"}});
    CHECK(dominates(dm, {5, 1}, {4, 2}));
    CHECK_FALSE(dominates(dm, {4, 1}, {5, 1}));
}

TEST_CASE("true_front: duplicates keep the lowest id") {
    const Dataset d = Dataset::parse(
        "t", {"x", "a-", "b-"},
        {{"1", "3", "3"}, {"2", "3", "3"}, {"3", "3", "3"}});
    const Frontier f = true_front(d);
    CHECK(f.ids == std::vector<int>{0});
}

TEST_CASE("true_front: staircase keeps the trade-off points") {
    const Dataset d = Dataset::parse("t", {"x", "a-", "b-"},
                                     {{"1", "1", "3"},
                                      {"1", "2", "2"},
                                      {"1", "3", "1"},
                                      {"1", "3", "3"}});
    const Frontier f = true_front(d);
    CHECK(f.ids == std::vector<int>{0, 1, 2});
}

TEST_CASE("true_front matches the brute-force oracle on random pools") {
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 10 + static_cast<int>(rng.index(119));
        const int m = 2 + static_cast<int>(rng.index(3));
        const Dataset d = random_min_dataset(rng, n, m);
        std::vector<std::vector<double>> pts(n);
        for (int r = 0; r < n; ++r) pts[r] = d.y_min_norm(r);
        CHECK(true_front(d).ids == testutil::brute_front(pts));
    }
}

TEST_CASE("pareto_fraction endpoints") {
    const Dataset all_nd = Dataset::parse("t", {"x", "a-", "b-"},
                                          {{"1", "1", "3"}, {"1", "2", "2"}, {"1", "3", "1"}});
    CHECK(pareto_fraction(all_nd) == doctest::Approx(1.0));

    const Dataset one = Dataset::parse("t", {"x", "a-", "b-"},
                                       {{"1", "0", "0"}, {"1", "2", "2"}, {"1", "3", "3"}, {"1", "4", "4"}});
    CHECK(pareto_fraction(one) == doctest::Approx(0.25));
}

TEST_CASE("igd and gd hand oracles") {
    const Frontier ref = front_of({{0, 0}, {1, 1}});
    const Frontier sub = front_of({{0, 0}});
    CHECK(igd(ref, ref) == doctest::Approx(0.0));
    CHECK(igd(sub, ref) == doctest::Approx((0.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-12));
    CHECK(igd(sub, ref) == doctest::Approx(0.7071067811865476).epsilon(1e-12));
    CHECK(gd(sub, ref) == doctest::Approx(0.0));  // front subset of reference

    const Frontier mid = front_of({{0.5, 0.5}});
    const Frontier origin = front_of({{0, 0}});
    CHECK(gd(mid, origin) == doctest::Approx(0.7071067811865476).epsilon(1e-12));
    CHECK(gd(origin, origin) == doctest::Approx(0.0));

    CHECK_THROWS_AS(igd(front_of({}), ref), Error);
}

TEST_CASE("igd is zero iff the reference is covered") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<double>> pts;
        const int n = 2 + static_cast<int>(rng.index(6));
        for (int i = 0; i < n; ++i) pts.push_back({rng.unit(), rng.unit()});
        const Frontier ref = front_of(pts);
        Frontier covering = ref;
        covering.points.push_back({rng.unit(), rng.unit()});
        covering.ids.push_back(99);
        CHECK(igd(covering, ref) == doctest::Approx(0.0).epsilon(1e-12));

        Frontier partial = front_of({pts[0]});
        const double v = igd(partial, ref);
        if (n > 1 && pts[1] != pts[0]) CHECK(v > 1e-12);
    }
}

TEST_CASE("hypervolume single box and empty front") {
    CHECK(hypervolume(front_of({{0.0, 0.0}})) == doctest::Approx(1.21).epsilon(1e-12));
    CHECK(hypervolume(front_of({})) == doctest::Approx(0.0));
    // Points beyond the reference contribute nothing.
    CHECK(hypervolume(front_of({{0.0, 1.2}, {0.5, 0.5}})) ==
          doctest::Approx(0.6 * 0.6).epsilon(1e-12));
}

TEST_CASE("hypervolume matches overlap arithmetic in 2d and 3d") {
    // Two overlapping boxes: union = a + b - intersection.
    const double hv2 = hypervolume(front_of({{0.2, 0.6}, {0.6, 0.2}}));
    const double a = (1.1 - 0.2) * (1.1 - 0.6), b = (1.1 - 0.6) * (1.1 - 0.2);
    const double inter = (1.1 - 0.6) * (1.1 - 0.6);
    CHECK(hv2 == doctest::Approx(a + b - inter).epsilon(1e-12));

    const double hv3 = hypervolume(front_of({{0.2, 0.6, 0.5}, {0.6, 0.2, 0.5}}));
    const double a3 = (1.1 - 0.2) * (1.1 - 0.6) * (1.1 - 0.5);
    const double b3 = (1.1 - 0.6) * (1.1 - 0.2) * (1.1 - 0.5);
    const double i3 = (1.1 - 0.6) * (1.1 - 0.6) * (1.1 - 0.5);
    CHECK(hv3 == doctest::Approx(a3 + b3 - i3).epsilon(1e-12));
}

TEST_CASE("hypervolume against a Monte-Carlo oracle") {
    Rng rng(23);
    for (int trial = 0; trial < 4; ++trial) {
        const int m = 2 + static_cast<int>(rng.index(2));
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < 24; ++i) {
            std::vector<double> p(m);
            for (double& v : p) v = rng.unit();
            pts.push_back(std::move(p));
        }
        const Frontier f = nondominated(pts, [&] {
            std::vector<int> ids(pts.size());
            for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
            return ids;
        }(), "mc");

        const double exact = hypervolume(f);
        // Monte-Carlo estimate over the [0, 1.1]^m reference box.
        const int samples = 200000;
        int hits = 0;
        Rng mc(1000 + trial);
        for (int s = 0; s < samples; ++s) {
            std::vector<double> u(m);
            for (double& v : u) v = mc.unit() * 1.1;
            for (const auto& p : f.points) {
                bool dom = true;
                for (int j = 0; j < m; ++j)
                    if (p[j] > u[j]) {
                        dom = false;
                        break;
                    }
                if (dom) {
                    ++hits;
                    break;
                }
            }
        }
        const double est = std::pow(1.1, m) * hits / samples;
        CHECK(std::abs(est - exact) < 0.02 * std::max(exact, 0.1));
    }
}

TEST_CASE("hypervolume monotonicity under insertions") {
    Rng rng(31);
    std::vector<std::vector<double>> nd;
    double hv_before = 0.0;
    for (int step = 0; step < 300; ++step) {
        std::vector<double> p{rng.unit(), rng.unit(), rng.unit()};
        bool dominated_or_dup = false;
        for (const auto& q : nd)
            if (q == p || dominates_min(q, p)) {
                dominated_or_dup = true;
                break;
            }
        std::vector<std::vector<double>> next = nd;
        next.push_back(p);
        std::vector<int> ids(next.size());
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
        const Frontier f = nondominated(next, ids, "step");
        const double hv_after = hypervolume(f);
        if (dominated_or_dup)
            CHECK(hv_after == doctest::Approx(hv_before).epsilon(1e-12));
        else
            CHECK(hv_after >= hv_before - 1e-12);
        hv_before = hv_after;
        nd.clear();
        for (const auto& q : f.points) nd.push_back(q);
    }
}

TEST_CASE("spacing cases") {
    CHECK(spacing(front_of({{0, 1}, {0.5, 0.5}})) == doctest::Approx(0.0));  // two points
    CHECK(spacing(front_of({{0, 0}})) == doctest::Approx(0.0));              // singleton
    // Equally spaced colinear points: all nearest-neighbor gaps equal.
    CHECK(spacing(front_of({{0, 1}, {0.25, 0.75}, {0.5, 0.5}, {0.75, 0.25}, {1, 0}})) ==
          doctest::Approx(0.0).epsilon(1e-12));

    // Hand oracle for an uneven front.
    const std::vector<std::vector<double>> pts{{0, 1}, {0.5, 0.5}, {1, 0}, {1, 0.1}};
    auto dist = [&](int i, int j) {
        return std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
    };
    std::vector<double> nn;
    for (int i = 0; i < 4; ++i) {
        double best = 1e9;
        for (int j = 0; j < 4; ++j)
            if (j != i) best = std::min(best, dist(i, j));
        nn.push_back(best);
    }
    const double mean = (nn[0] + nn[1] + nn[2] + nn[3]) / 4.0;
    double ss = 0.0;
    for (const double v : nn) ss += (v - mean) * (v - mean);
    CHECK(spacing(front_of(pts)) == doctest::Approx(std::sqrt(ss / 3.0)).epsilon(1e-12));
}

TEST_CASE("non_extreme_count") {
    CHECK(non_extreme_count(front_of({{0, 1}, {1, 0}})) == 0);
    CHECK(non_extreme_count(front_of({{0, 4}, {1, 3}, {2, 2}, {3, 1}, {4, 0}})) == 3);
    // Ties for an objective's best all count as extreme.
    CHECK(non_extreme_count(front_of({{0, 1}, {0, 2}, {1, 0}})) == 0);

    // Brute-force marking on random fronts.
    Rng rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::vector<double>> pts;
        const int n = 1 + static_cast<int>(rng.index(12));
        for (int i = 0; i < n; ++i) pts.push_back({rng.unit(), rng.unit(), rng.unit()});
        std::vector<bool> extreme(n, false);
        for (int j = 0; j < 3; ++j) {
            double best = 1e9;
            for (const auto& p : pts) best = std::min(best, p[j]);
            for (int i = 0; i < n; ++i)
                if (pts[i][j] == best) extreme[i] = true;
        }
        int expect = 0;
        for (int i = 0; i < n; ++i)
            if (!extreme[i]) ++expect;
        CHECK(non_extreme_count(front_of(pts)) == expect);
    }
}

TEST_CASE("metrics are permutation-invariant in member order") {
    Rng rng(53);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 9; ++i) pts.push_back({rng.unit(), rng.unit()});
    Frontier a = front_of(pts);
    std::reverse(pts.begin(), pts.end());
    Frontier b = front_of(pts);
    const Frontier ref = front_of({{0.1, 0.1}, {0.05, 0.5}});
    CHECK(hypervolume(a) == doctest::Approx(hypervolume(b)).epsilon(1e-12));
    CHECK(spacing(a) == doctest::Approx(spacing(b)).epsilon(1e-12));
    CHECK(igd(a, ref) == doctest::Approx(igd(b, ref)).epsilon(1e-12));
    CHECK(gd(a, ref) == doctest::Approx(gd(b, ref)).epsilon(1e-12));
    CHECK(non_extreme_count(a) == non_extreme_count(b));
}

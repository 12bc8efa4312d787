#include "poolopt/synth.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "poolopt/rng.hpp"
#include "poolopt/util.hpp"

namespace poolopt {

namespace {

std::vector<std::string> make_header(int n_numeric, int n_objectives) {
    std::vector<std::string> header;
    for (int k = 0; k < n_numeric; ++k) header.push_back("x" + std::to_string(k + 1));
    for (int j = 0; j < n_objectives; ++j) header.push_back("o" + std::to_string(j + 1) + "-");
    return header;
}

std::vector<std::string> to_cells(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<std::string> row;
    row.reserve(x.size() + y.size());
    for (const double v : x) row.push_back(fmt_double(v));
    for (const double v : y) row.push_back(fmt_double(v));
    return row;
}

// Point on the unit simplex (coordinates sum to 1). Distinct points with
// equal sums are pairwise incomparable under minimization.
std::vector<double> simplex_point(Rng& rng, int m) {
    std::vector<double> w(m);
    double total = 0.0;
    for (int j = 0; j < m; ++j) {
        w[j] = 0.05 + rng.unit();
        total += w[j];
    }
    for (int j = 0; j < m; ++j) w[j] /= total;
    return w;
}

}  // namespace

Dataset generate_island(const IslandSpec& spec) {
    if (spec.island_fraction <= 0.0 || spec.island_fraction >= 0.5)
        throw Error("generate_island: island_fraction must be in (0, 0.5)");
    const int n_island =
        static_cast<int>(std::lround(spec.n_rows * spec.island_fraction));
    if (n_island < 2) throw Error("generate_island: n_rows * island_fraction must be >= 2");
    if (spec.island_radius <= 0.0 || spec.island_radius >= 1.0)
        throw Error("generate_island: island_radius must be in (0, 1)");
    if (spec.n_numeric < 1 || spec.n_objectives < 1) throw Error("generate_island: bad shape");
    if (spec.noise < 0.0) throw Error("generate_island: negative noise");

    Rng rng(spec.seed);
    const int d = spec.n_numeric, m = spec.n_objectives;

    // Center placed away from the walls so the island ball fits.
    std::vector<double> center(d);
    for (int k = 0; k < d; ++k)
        center[k] = spec.island_radius + rng.unit() * (1.0 - 2.0 * spec.island_radius);

    std::vector<std::vector<std::string>> cells;
    cells.reserve(spec.n_rows);

    // Island rows: decisions inside the ball, objectives on a near-ideal
    // simplex slice (mutually non-dominated, all below the background).
    for (int i = 0; i < n_island; ++i) {
        std::vector<double> x(d);
        while (true) {
            double r2 = 0.0;
            for (int k = 0; k < d; ++k) {
                x[k] = (2.0 * rng.unit() - 1.0) * spec.island_radius;
                r2 += x[k] * x[k];
            }
            if (r2 <= spec.island_radius * spec.island_radius) break;
        }
        for (int k = 0; k < d; ++k) x[k] = std::clamp(center[k] + x[k], 0.0, 1.0);

        const auto w = simplex_point(rng, m);
        std::vector<double> y(m);
        for (int j = 0; j < m; ++j) y[j] = 0.01 + 0.05 * w[j];
        cells.push_back(to_cells(x, y));
    }

    // Background rows: dominated objectives growing with distance from the
    // island center, plus an anti-correlated direction term. Rows at equal
    // distance in different directions trade off against each other, so a
    // wide apparent front rings the island the way real landscapes dangle
    // sparse extremes in front of diversity-seeking methods. The zero-sum
    // term is bounded by 0.15 * dist, keeping every coordinate above the
    // island's 0.07 ceiling: islands dominate all of it.
    const double max_dist = std::sqrt(static_cast<double>(d));
    for (int i = n_island; i < spec.n_rows; ++i) {
        std::vector<double> x(d);
        double dist2 = 0.0;
        for (int k = 0; k < d; ++k) {
            x[k] = rng.unit();
            dist2 += (x[k] - center[k]) * (x[k] - center[k]);
        }
        const double dist = std::sqrt(dist2) / max_dist;

        std::vector<double> tilt(m, 0.0);
        if (m >= 2 && dist2 > 0.0) {
            double mean = 0.0;
            for (int j = 0; j < m; ++j) {
                const double u = (x[j % d] - center[j % d]) / (std::sqrt(dist2));
                tilt[j] = 0.5 + 0.5 * u;
                mean += tilt[j] / m;
            }
            for (int j = 0; j < m; ++j) tilt[j] -= mean;  // zero-sum across objectives
        }

        std::vector<double> y(m);
        for (int j = 0; j < m; ++j) {
            const double jitter = 0.02 * rng.unit();
            y[j] = 0.15 + 0.55 * dist + 0.3 * dist * tilt[j] + jitter + spec.noise * rng.normal();
        }
        cells.push_back(to_cells(x, y));
    }

    return Dataset::parse("island-" + std::to_string(spec.seed), make_header(d, m), cells);
}

Dataset generate_uniform(int n_rows, int n_numeric, int n_objectives, std::uint64_t seed) {
    if (n_rows < 10) throw Error("generate_uniform: n_rows must be >= 10");
    if (n_numeric < 1 || n_objectives < 1) throw Error("generate_uniform: bad shape");

    Rng rng(seed);
    std::vector<std::vector<std::string>> cells;
    cells.reserve(n_rows);
    for (int i = 0; i < n_rows; ++i) {
        std::vector<double> x(n_numeric), y(n_objectives);
        for (double& v : x) v = rng.unit();
        for (double& v : y) v = rng.unit();
        cells.push_back(to_cells(x, y));
    }
    return Dataset::parse("uniform-" + std::to_string(seed), make_header(n_numeric, n_objectives),
                          cells);
}

}  // namespace poolopt

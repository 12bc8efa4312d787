#include "poolopt/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace poolopt {

bool dominates_min(const std::vector<double>& a, const std::vector<double>& b) {
    bool strict = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] > b[j]) return false;
        if (a[j] < b[j]) strict = true;
    }
    return strict;
}

bool dominates(const Dataset& d, const std::vector<double>& ya, const std::vector<double>& yb) {
    return dominates_min(d.to_min_norm(ya), d.to_min_norm(yb));
}

Frontier nondominated(std::vector<std::vector<double>> points, std::vector<int> ids,
                      std::string source) {
    const std::size_t n = points.size();
    Frontier f;
    f.source = std::move(source);
    if (n == 0) return f;

    // A dominator always has a strictly smaller coordinate sum, so sorting
    // by sum lets each point be checked against earlier survivors only.
    std::vector<double> sums(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        sums[i] = std::accumulate(points[i].begin(), points[i].end(), 0.0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (sums[a] != sums[b]) return sums[a] < sums[b];
        return ids[a] < ids[b];
    });

    std::vector<std::size_t> kept;
    for (const std::size_t i : order) {
        bool dead = false;
        for (const std::size_t k : kept) {
            if (points[k] == points[i] || dominates_min(points[k], points[i])) {
                dead = true;  // duplicates keep the earlier (lower-id) entry
                break;
            }
        }
        if (!dead) kept.push_back(i);
    }

    std::sort(kept.begin(), kept.end(),
              [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
    for (const std::size_t i : kept) {
        f.ids.push_back(ids[i]);
        f.points.push_back(std::move(points[i]));
    }
    return f;
}

Frontier true_front(const Dataset& d) {
    std::vector<std::vector<double>> pts(d.rows());
    std::vector<int> ids(d.rows());
    for (int r = 0; r < d.rows(); ++r) {
        pts[r] = d.y_min_norm(r);
        ids[r] = r;
    }
    return nondominated(std::move(pts), std::move(ids), "true-front");
}

double pareto_fraction(const Dataset& d) {
    return static_cast<double>(true_front(d).size()) / static_cast<double>(d.rows());
}

namespace {

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double delta = a[j] - b[j];
        s += delta * delta;
    }
    return std::sqrt(s);
}

double mean_nearest(const std::vector<std::vector<double>>& from,
                    const std::vector<std::vector<double>>& to) {
    double total = 0.0;
    for (const auto& p : from) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : to) best = std::min(best, euclid(p, q));
        total += best;
    }
    return total / static_cast<double>(from.size());
}

}  // namespace

double igd(const Frontier& front, const Frontier& reference) {
    if (reference.points.empty()) throw Error("igd: empty reference front");
    if (front.points.empty()) throw Error("igd: empty front");
    return mean_nearest(reference.points, front.points);
}

double gd(const Frontier& front, const Frontier& reference) {
    if (reference.points.empty()) throw Error("gd: empty reference front");
    if (front.points.empty()) throw Error("gd: empty front");
    return mean_nearest(front.points, reference.points);
}

namespace {

// Hypervolume by slicing the last active dimension; exact for any M,
// practical for M <= 5. `pts` holds points strictly inside the ref box.
double hv_sweep(std::vector<const std::vector<double>*> pts, const std::vector<double>& ref,
                int m) {
    if (pts.empty()) return 0.0;
    if (m == 1) {
        double lo = ref[0];
        for (const auto* p : pts) lo = std::min(lo, (*p)[0]);
        return ref[0] - lo;
    }
    std::sort(pts.begin(), pts.end(),
              [m](const std::vector<double>* a, const std::vector<double>* b) {
                  return (*a)[m - 1] < (*b)[m - 1];
              });
    double vol = 0.0;
    std::vector<const std::vector<double>*> active;
    active.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        active.push_back(pts[i]);
        const double top = i + 1 < pts.size() ? (*pts[i + 1])[m - 1] : ref[m - 1];
        const double depth = top - (*pts[i])[m - 1];
        if (depth > 0.0) vol += depth * hv_sweep(active, ref, m - 1);
    }
    return vol;
}

}  // namespace

double hypervolume(const std::vector<std::vector<double>>& points,
                   const std::vector<double>& ref_point) {
    const int m = static_cast<int>(ref_point.size());
    std::vector<const std::vector<double>*> inside;
    inside.reserve(points.size());
    for (const auto& p : points) {
        bool contributes = true;
        for (int j = 0; j < m; ++j) {
            if (p[j] >= ref_point[j]) {
                contributes = false;
                break;
            }
        }
        if (contributes) inside.push_back(&p);
    }
    return hv_sweep(std::move(inside), ref_point, m);
}

double hypervolume(const Frontier& front, const std::vector<double>& ref_point) {
    return hypervolume(front.points, ref_point);
}

double hypervolume(const Frontier& front) {
    if (front.points.empty()) return 0.0;
    return hypervolume(front.points, std::vector<double>(front.points[0].size(), kHvRef));
}

double spacing(const Frontier& front) {
    const std::size_t n = front.points.size();
    if (n < 2) return 0.0;
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dist = euclid(front.points[i], front.points[j]);
            nearest[i] = std::min(nearest[i], dist);
            nearest[j] = std::min(nearest[j], dist);
        }
    }
    const double mean = std::accumulate(nearest.begin(), nearest.end(), 0.0) /
                        static_cast<double>(n);
    double ss = 0.0;
    for (const double v : nearest) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

int non_extreme_count(const Frontier& front) {
    const std::size_t n = front.points.size();
    if (n == 0) return 0;
    const std::size_t m = front.points[0].size();
    std::vector<char> extreme(n, 0);
    for (std::size_t j = 0; j < m; ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : front.points) best = std::min(best, p[j]);
        for (std::size_t i = 0; i < n; ++i)
            if (front.points[i][j] == best) extreme[i] = 1;
    }
    return static_cast<int>(n - std::count(extreme.begin(), extreme.end(), 1));
}

CoverageScores coverage(const Frontier& front, const Frontier& truth) {
    CoverageScores s;
    s.true_igd = igd(front, truth);
    s.true_gd = gd(front, truth);
    s.hv = hypervolume(front);
    s.spacing = spacing(front);
    s.frontier_size = front.size();
    s.non_extreme_count = non_extreme_count(front);
    return s;
}

}  // namespace poolopt

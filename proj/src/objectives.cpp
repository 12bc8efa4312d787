#include "poolopt/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace poolopt {

std::vector<double> heaven(const Dataset& d) {
    std::vector<double> h(d.n_objectives());
    for (int j = 0; j < d.n_objectives(); ++j)
        h[j] = d.objective_spec(j).direction == Direction::Maximize ? 1.0 : 0.0;
    return h;
}

double d2h(const Dataset& d, const std::vector<double>& y_raw) {
    // In minimized-normalized space heaven is the origin, so d2h is the
    // root mean square of the coordinates.
    const auto v = d.to_min_norm(y_raw);
    double sum = 0.0;
    for (const double c : v) sum += c * c;
    return std::sqrt(sum / static_cast<double>(v.size()));
}

double d2h_row(const Dataset& d, int row) { return d2h(d, d.y_row(row)); }

double d2h_star(const Dataset& d) {
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < d.rows(); ++r) best = std::min(best, d2h_row(d, r));
    return best;
}

double regret(double best_so_far_d2h, double d2h_star) {
    return (best_so_far_d2h - d2h_star) / std::max(d2h_star, kRegretEps);
}

RegretCurve make_regret_curve(const Dataset& d, const std::vector<double>& step_d2h) {
    RegretCurve curve;
    curve.d2h_star = d2h_star(d);
    curve.best_so_far.reserve(step_d2h.size());
    curve.regret.reserve(step_d2h.size());
    double best = std::numeric_limits<double>::infinity();
    for (const double v : step_d2h) {
        best = std::min(best, v);
        curve.best_so_far.push_back(best);
        curve.regret.push_back(regret(best, curve.d2h_star));
    }
    return curve;
}

}  // namespace poolopt

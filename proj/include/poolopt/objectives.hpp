#pragma once

#include <vector>

#include "poolopt/dataset.hpp"

namespace poolopt {

// Regret denominator floor: keeps curves finite on datasets whose optimum
// sits exactly at heaven.
inline constexpr double kRegretEps = 1e-6;

// Ideal point in normalized objective space: 1 per maximize column, 0 per
// minimize column.
std::vector<double> heaven(const Dataset& d);

// Distance to Heaven: sqrt of the mean squared gap between the normalized
// objectives and the ideal point. In [0,1]; lower is better.
double d2h(const Dataset& d, const std::vector<double>& y_raw);
double d2h_row(const Dataset& d, int row);

// Minimum d2h over the exhaustively labeled table.
double d2h_star(const Dataset& d);

// (best - star) / max(star, eps).
double regret(double best_so_far_d2h, double d2h_star);

struct RegretCurve {
    std::vector<double> best_so_far;  // monotone non-increasing
    std::vector<double> regret;       // >= 0, same length
    double d2h_star = 0.0;
};

// Folds a per-step d2h sequence into best-so-far and regret values.
RegretCurve make_regret_curve(const Dataset& d, const std::vector<double>& step_d2h);

}  // namespace poolopt

#pragma once

#include <string>
#include <vector>

#include "poolopt/dataset.hpp"

namespace poolopt {

// Hypervolume reference point, per minimized-normalized dimension.
inline constexpr double kHvRef = 1.1;

// A non-dominated set in minimized-normalized objective space. Member
// order follows ascending row id; synthetic fronts built from bare points
// use ids -1.
struct Frontier {
    std::vector<int> ids;
    std::vector<std::vector<double>> points;
    std::string source;

    int size() const { return static_cast<int>(points.size()); }
};

struct CoverageScores {
    double true_igd = 0.0;
    double true_gd = 0.0;
    double hv = 0.0;
    double spacing = 0.0;
    int frontier_size = 0;
    int non_extreme_count = 0;
};

// Strict Pareto dominance in minimized space: no worse everywhere,
// strictly better somewhere.
bool dominates_min(const std::vector<double>& a, const std::vector<double>& b);
// Same, on raw objective vectors of d (directions applied per column).
bool dominates(const Dataset& d, const std::vector<double>& ya, const std::vector<double>& yb);

// Non-dominated filter. Duplicate points keep the entry with the lowest
// id (ids must be unique; pass ascending ids for the duplicate rule to
// mean "lowest row id").
Frontier nondominated(std::vector<std::vector<double>> points, std::vector<int> ids,
                      std::string source);

// Exhaustive non-domination over the whole table.
Frontier true_front(const Dataset& d);

// |true_front| / |rows|.
double pareto_fraction(const Dataset& d);

// Mean distance from reference members to their nearest front member.
double igd(const Frontier& front, const Frontier& reference);
// Mean distance from front members to their nearest reference member.
double gd(const Frontier& front, const Frontier& reference);

// Lebesgue measure of the union of boxes [point, ref] in minimized space.
// Points with any coordinate at or beyond ref contribute nothing. Exact
// (recursive dimension sweep); intended for M <= 5.
double hypervolume(const std::vector<std::vector<double>>& points,
                   const std::vector<double>& ref_point);
double hypervolume(const Frontier& front, const std::vector<double>& ref_point);
double hypervolume(const Frontier& front);  // ref = kHvRef per dimension

// Schott spacing: stddev (n-1 denominator) of nearest-neighbor distances.
// Fronts smaller than 2 score 0.
double spacing(const Frontier& front);

// Members that are not the single best on any one objective; ties for an
// objective's best all count as extreme.
int non_extreme_count(const Frontier& front);

// All coverage metrics of `front` against the dataset's true front.
CoverageScores coverage(const Frontier& front, const Frontier& truth);

}  // namespace poolopt

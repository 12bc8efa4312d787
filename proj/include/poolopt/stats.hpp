#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "poolopt/dataset.hpp"

namespace poolopt {

// Conventional cutoff below which a Cliff's Delta is negligible.
inline constexpr double kNegligibleDelta = 0.147;
inline constexpr double kAlpha = 0.05;
inline constexpr int kBootstrapResamples = 512;

struct MannWhitney {
    double u;   // midrank U statistic of the first sample
    double p;   // two-sided, normal approximation with tie correction
    double rb;  // rank-biserial: (#a>b - #a<b) / (|a|*|b|); < 0 means a lower
};

MannWhitney mann_whitney(const std::vector<double>& a, const std::vector<double>& b);

// (#pairs a>b - #pairs a<b) / (|a|*|b|).
double cliffs_delta(const std::vector<double>& a, const std::vector<double>& b);

// Two-sided bootstrap test of mean difference, resampling pooled under H0.
double bootstrap_same(const std::vector<double>& a, const std::vector<double>& b,
                      int n_resamples = kBootstrapResamples, std::uint64_t seed = 1);

// Scott-Knott tiers, 1 = best (lowest values). Methods sort by median and
// split recursively at the point maximizing the between-group sum of
// squares of medians, but only where the bootstrap and Cliff's Delta both
// confirm a meaningful difference.
std::map<std::string, int> scott_knott(const std::map<std::string, std::vector<double>>& samples,
                                       int n_resamples = kBootstrapResamples,
                                       std::uint64_t seed = 1);

// Per-dataset tier assignments across method labels, and the sample
// distributions they came from.
struct TierTable {
    std::map<std::string, std::map<std::string, int>> tiers;  // dataset -> label -> tier
    std::map<std::string, std::map<std::string, std::vector<double>>> samples;
};

struct WinTieLoss {
    int win = 0;
    int tie = 0;
    int loss = 0;
    std::vector<std::string> skipped;  // datasets missing either method
};

// Per dataset: reference tier < opponent tier counts a win, equal a tie.
WinTieLoss win_tie_loss(const std::string& reference, const std::string& opponent,
                        const TierTable& tiers);

struct LandscapeReport {
    std::string dataset;
    int rows = 0;
    double pareto_fraction = 0.0;
    double d2h_rb = 0.0, d2h_p = 1.0;
    double x_dist_rb = 0.0, x_dist_p = 1.0;
    std::optional<bool> concentrated_objective;
    std::optional<bool> concentrated_decision;
};

// Landscape concentration statistics: d2h of Pareto vs non-Pareto rows,
// and pairwise decision distances within the Pareto set vs an equal-size
// random non-Pareto sample (both sides capped at 200 rows). Datasets with
// fewer than 2 rows on either side get null flags.
LandscapeReport landscape_report(const Dataset& d, std::uint64_t seed = 1);

}  // namespace poolopt

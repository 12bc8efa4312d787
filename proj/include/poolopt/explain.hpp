#pragma once

#include <memory>
#include <string>

#include "poolopt/dataset.hpp"
#include "poolopt/search.hpp"

namespace poolopt {

// Node of the Best-vs-Rest explanation tree. Internal nodes carry the
// split; each child knows which side of it it is. Rows whose split value
// is missing fail the test and fall to the no-branch.
struct TreeNode {
    double win = 0.0;  // mean win of the rows here
    int support = 0;
    int depth = 0;

    // Split (internal nodes only).
    int column = -1;  // decision column index; -1 on leaves
    double threshold = 0.0;
    int category = -1;
    bool categorical = false;

    std::unique_ptr<TreeNode> yes;  // column <= threshold, or == category
    std::unique_ptr<TreeNode> no;

    bool leaf() const { return !yes; }
};

struct TreeConfig {
    int max_depth = 4;
    int min_leaf = 2;
    int max_variables = 10;  // hard cap on distinct split columns
};

// Regression tree over a run's revealed rows. Target is win(row) =
// 1 - normalized d2h over the revealed rows (best row 1, worst 0; all
// equal maps to 0.5). Splits greedily minimize weighted within-child
// variance; numeric thresholds sit at midpoints between sorted distinct
// values.
std::unique_ptr<TreeNode> build_tree(const Trajectory& t, const Dataset& d,
                                     const TreeConfig& cfg = {});

// Indented text rendering:
//   win
//   ===
//   .67   baseline
//   .63   some_column <= 227.23
//   .59   |   other_column == fast
std::string render_tree(const TreeNode& root, const Dataset& d);

// Distinct decision columns referenced by any split.
int tree_variable_count(const TreeNode& root);

}  // namespace poolopt

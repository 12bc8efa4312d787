#include "poolopt/explain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "poolopt/objectives.hpp"

namespace poolopt {

namespace {

struct Sample {
    int row;
    double win;
};

double mean_win(const std::vector<Sample>& rows) {
    double s = 0.0;
    for (const auto& r : rows) s += r.win;
    return s / static_cast<double>(rows.size());
}

double sse(const std::vector<Sample>& rows) {
    const double m = mean_win(rows);
    double s = 0.0;
    for (const auto& r : rows) s += (r.win - m) * (r.win - m);
    return s;
}

struct Split {
    int column = -1;
    bool categorical = false;
    double threshold = 0.0;
    int category = -1;
    double child_sse = std::numeric_limits<double>::infinity();
};

// Missing values fail every test: they always land in the no-branch.
bool goes_yes(const Dataset& d, int row, const Split& s) {
    if (d.x_missing(row, s.column)) return false;
    if (s.categorical) return d.x_code(row, s.column) == s.category;
    return d.x_raw(row, s.column) <= s.threshold;
}

Split best_split(const Dataset& d, const std::vector<Sample>& rows,
                 const std::set<int>& used_columns, const TreeConfig& cfg) {
    Split best;
    const bool can_add = static_cast<int>(used_columns.size()) < cfg.max_variables;

    for (int k = 0; k < d.n_decisions(); ++k) {
        if (!can_add && !used_columns.count(k)) continue;

        if (d.x_is_numeric(k)) {
            // Values present in this node, sorted; missings go right.
            std::vector<std::pair<double, double>> pts;  // (value, win)
            double miss_sum = 0.0, miss_sq = 0.0;
            int miss_n = 0;
            for (const auto& r : rows) {
                if (d.x_missing(r.row, k)) {
                    miss_sum += r.win;
                    miss_sq += r.win * r.win;
                    ++miss_n;
                } else {
                    pts.emplace_back(d.x_raw(r.row, k), r.win);
                }
            }
            if (pts.size() < 2) continue;
            std::sort(pts.begin(), pts.end());

            double left_sum = 0.0, left_sq = 0.0;
            double total_sum = miss_sum, total_sq = miss_sq;
            for (const auto& [v, w] : pts) {
                total_sum += w;
                total_sq += w * w;
            }
            const int n = static_cast<int>(rows.size());
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                left_sum += pts[i].second;
                left_sq += pts[i].second * pts[i].second;
                if (pts[i].first == pts[i + 1].first) continue;
                const int nl = static_cast<int>(i + 1);
                const int nr = n - nl;
                if (nl < cfg.min_leaf || nr < cfg.min_leaf) continue;
                const double right_sum = total_sum - left_sum;
                const double right_sq = total_sq - left_sq;
                const double s = (left_sq - left_sum * left_sum / nl) +
                                 (right_sq - right_sum * right_sum / nr);
                if (s < best.child_sse) {
                    best.child_sse = s;
                    best.column = k;
                    best.categorical = false;
                    best.threshold = (pts[i].first + pts[i + 1].first) / 2.0;
                }
            }
        } else {
            const int n = static_cast<int>(rows.size());
            double total_sum = 0.0, total_sq = 0.0;
            for (const auto& r : rows) {
                total_sum += r.win;
                total_sq += r.win * r.win;
            }
            for (int cat = 0; cat < d.n_categories(k); ++cat) {
                double in_sum = 0.0, in_sq = 0.0;
                int nl = 0;
                for (const auto& r : rows) {
                    if (!d.x_missing(r.row, k) && d.x_code(r.row, k) == cat) {
                        in_sum += r.win;
                        in_sq += r.win * r.win;
                        ++nl;
                    }
                }
                const int nr = n - nl;
                if (nl < cfg.min_leaf || nr < cfg.min_leaf) continue;
                const double out_sum = total_sum - in_sum;
                const double out_sq = total_sq - in_sq;
                const double s =
                    (in_sq - in_sum * in_sum / nl) + (out_sq - out_sum * out_sum / nr);
                if (s < best.child_sse) {
                    best.child_sse = s;
                    best.column = k;
                    best.categorical = true;
                    best.category = cat;
                }
            }
        }
    }
    return best;
}

void grow(const Dataset& d, TreeNode& node, const std::vector<Sample>& rows,
          std::set<int>& used_columns, const TreeConfig& cfg) {
    node.win = mean_win(rows);
    node.support = static_cast<int>(rows.size());

    if (node.depth >= cfg.max_depth) return;
    if (static_cast<int>(rows.size()) < 2 * cfg.min_leaf) return;
    const double node_sse = sse(rows);
    if (node_sse <= 1e-12) return;

    const Split split = best_split(d, rows, used_columns, cfg);
    if (split.column < 0 || split.child_sse >= node_sse - 1e-12) return;

    node.column = split.column;
    node.categorical = split.categorical;
    node.threshold = split.threshold;
    node.category = split.category;
    used_columns.insert(split.column);

    std::vector<Sample> yes_rows, no_rows;
    for (const auto& r : rows)
        (goes_yes(d, r.row, split) ? yes_rows : no_rows).push_back(r);

    node.yes = std::make_unique<TreeNode>();
    node.no = std::make_unique<TreeNode>();
    node.yes->depth = node.no->depth = node.depth + 1;
    grow(d, *node.yes, yes_rows, used_columns, cfg);
    grow(d, *node.no, no_rows, used_columns, cfg);
}

}  // namespace

std::unique_ptr<TreeNode> build_tree(const Trajectory& t, const Dataset& d,
                                     const TreeConfig& cfg) {
    if (t.steps.size() < 8) throw Error("build_tree: needs at least 8 revealed rows");

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : t.steps) {
        lo = std::min(lo, s.d2h);
        hi = std::max(hi, s.d2h);
    }
    std::vector<Sample> rows;
    rows.reserve(t.steps.size());
    for (const auto& s : t.steps) {
        const double win = hi > lo ? 1.0 - (s.d2h - lo) / (hi - lo) : 0.5;
        rows.push_back({s.id, win});
    }
    std::sort(rows.begin(), rows.end(),
              [](const Sample& a, const Sample& b) { return a.row < b.row; });

    auto root = std::make_unique<TreeNode>();
    std::set<int> used;
    grow(d, *root, rows, used, cfg);
    return root;
}

namespace {

std::string fmt_win(double w) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.2f", w);
    std::string s(buf);
    if (s.size() > 1 && s[0] == '0') s.erase(0, 1);  // Fig-7 style ".67"
    return s;
}

std::string fmt_threshold(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string condition(const Dataset& d, const TreeNode& parent, bool yes_side) {
    const std::string& col = d.decision_spec(parent.column).name;
    if (parent.categorical) {
        const std::string& tok = d.category(parent.column, parent.category);
        return col + (yes_side ? " == " : " != ") + tok;
    }
    return col + (yes_side ? " <= " : " > ") + fmt_threshold(parent.threshold);
}

void render(const Dataset& d, const TreeNode& node, std::string& out) {
    if (node.leaf()) return;
    for (const bool yes_side : {true, false}) {
        const TreeNode& child = yes_side ? *node.yes : *node.no;
        out += fmt_win(child.win);
        out += "   ";
        for (int i = 1; i < child.depth; ++i) out += "|   ";
        out += condition(d, node, yes_side);
        out += '\n';
        render(d, child, out);
    }
}

}  // namespace

std::string render_tree(const TreeNode& root, const Dataset& d) {
    std::string out = "win\n===\n";
    out += fmt_win(root.win);
    out += "   baseline\n";
    render(d, root, out);
    return out;
}

namespace {

void collect_columns(const TreeNode& node, std::set<int>& cols) {
    if (node.leaf()) return;
    cols.insert(node.column);
    collect_columns(*node.yes, cols);
    collect_columns(*node.no, cols);
}

}  // namespace

int tree_variable_count(const TreeNode& root) {
    std::set<int> cols;
    collect_columns(root, cols);
    return static_cast<int>(cols.size());
}

}  // namespace poolopt

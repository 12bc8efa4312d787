#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "poolopt/errors.hpp"

namespace poolopt {

enum class ColumnKind { DecisionNumeric, DecisionCategorical, Objective };
enum class Direction { None, Minimize, Maximize };

struct ColumnSpec {
    std::string name;  // header token, objective marker included
    ColumnKind kind = ColumnKind::DecisionNumeric;
    Direction direction = Direction::None;
    double lo = 0.0;  // observed min/max, numeric columns only
    double hi = 0.0;
};

// An immutable MOOT table.
//
// Format: comma-separated UTF-8, first row is the header, "?" (or an empty
// cell) marks a missing decision value. Header tokens ending in '+' are
// maximize objectives, tokens ending in '-' are minimize objectives, and
// everything else is a decision column. A decision column is numeric iff
// every non-missing cell parses as a number. Normalization stats (lo/hi)
// are computed over all rows at load time and never change.
class Dataset {
public:
    static Dataset load(const std::filesystem::path& path);
    static Dataset parse(std::string name, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& cells);

    const std::string& name() const { return name_; }
    int rows() const { return rows_; }
    int n_decisions() const { return static_cast<int>(dec_.size()); }
    int n_objectives() const { return static_cast<int>(obj_.size()); }
    const std::vector<ColumnSpec>& columns() const { return columns_; }
    const ColumnSpec& decision_spec(int k) const { return columns_[dec_col_[k]]; }
    const ColumnSpec& objective_spec(int j) const { return columns_[obj_col_[j]]; }

    // Objective access (raw table values; pool code must go through reveal).
    double y(int row, int j) const { return obj_[j][row]; }
    std::vector<double> y_row(int row) const;
    // Min-max normalized objectives, in [0,1]; constant columns map to 0.5.
    std::vector<double> y_norm(int row) const;
    double y_norm1(int row, int j) const;
    // Normalized with maximize columns flipped (1 - v): lower is always better.
    std::vector<double> y_min_norm(int row) const;
    std::vector<double> to_min_norm(const std::vector<double>& y_raw) const;

    // Decision access.
    bool x_is_numeric(int k) const { return dec_[k].numeric; }
    bool x_missing(int row, int k) const;
    double x_raw(int row, int k) const { return dec_[k].num[row]; }
    double x_norm(int row, int k) const;  // numeric columns, 0.5 when lo == hi
    int x_code(int row, int k) const { return dec_[k].code[row]; }
    int n_categories(int k) const { return static_cast<int>(dec_[k].cats.size()); }
    // Categories are stored sorted, so code order is lexicographic order.
    const std::string& category(int k, int code) const { return dec_[k].cats[code]; }

    void write_csv(std::ostream& out) const;
    void write_csv(const std::filesystem::path& path) const;

private:
    std::string name_;
    int rows_ = 0;
    std::vector<ColumnSpec> columns_;
    std::vector<int> dec_col_;  // decision index -> column index
    std::vector<int> obj_col_;

    struct DecCol {
        bool numeric = true;
        std::vector<double> num;        // NaN = missing
        std::vector<int> code;          // -1 = missing
        std::vector<std::string> cats;  // sorted
    };
    std::vector<DecCol> dec_;
    std::vector<std::vector<double>> obj_;
};

// A point in decision space: normalized numeric coordinates (NaN = missing
// or non-numeric column) and category codes (-1 = missing or numeric
// column). Rows, archive centroids, and synthetic offspring all reduce to
// this so one distance routine serves them all.
struct DecisionPoint {
    std::vector<double> num;
    std::vector<int> code;
};

DecisionPoint decision_point(const Dataset& d, int row);

// Normalized Euclidean distance over decision columns: sqrt(mean of
// per-column deltas squared). Numeric delta is |a - b| on min-max
// normalized values; categorical delta is 0/1 on token equality. Missing
// values take the pessimistic delta: max attainable against the present
// side, 1 when both sides are missing.
double x_distance(const Dataset& d, const DecisionPoint& a, const DecisionPoint& b);
double x_distance(const Dataset& d, int row, const DecisionPoint& b);
double x_distance(const Dataset& d, int row_a, int row_b);

// Budget-accounted view of a Dataset. Decision values of every row are
// free to read; objective values are readable only through reveal, which
// spends exactly one budget unit per new row. Single-writer: one optimizer
// run owns one Pool.
class Pool {
public:
    Pool(const Dataset& d, int budget);

    const Dataset& dataset() const { return *d_; }
    int budget() const { return budget_; }
    int spent() const { return spent_; }
    int remaining() const { return budget_ - spent_; }
    bool is_revealed(int id) const;

    // Returns the row's objective vector. Re-revealing an already revealed
    // id is a free no-op returning the cached values.
    std::vector<double> reveal(int id);

    // Ids in reveal order; size always equals spent().
    const std::vector<int>& reveal_order() const { return order_; }

private:
    const Dataset* d_;
    int budget_;
    int spent_ = 0;
    std::vector<char> revealed_;
    std::vector<int> order_;
};

}  // namespace poolopt

#include "poolopt/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>

#include "poolopt/util.hpp"

namespace poolopt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_missing_token(std::string_view cell) {
    const auto t = trim(cell);
    return t.empty() || t == "?";
}

double norm01(double v, double lo, double hi) {
    if (hi > lo) return (v - lo) / (hi - lo);
    return 0.5;  // constant column: contributes nothing discriminative
}

}  // namespace

Dataset Dataset::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        lines.push_back(line);
    }
    if (lines.empty()) throw ParseError(path.string() + ": missing header");
    if (lines.size() < 3) throw ParseError(path.string() + ": need at least 2 data rows");

    const auto header = split(lines[0], ',');
    std::vector<std::vector<std::string>> cells;
    cells.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) cells.push_back(split(lines[i], ','));

    return parse(path.stem().string(), header, cells);
}

Dataset Dataset::parse(std::string name, const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& cells) {
    Dataset d;
    d.name_ = std::move(name);

    if (header.empty()) throw ParseError(d.name_ + ": missing header");
    if (cells.empty()) throw ParseError(d.name_ + ": no data rows");
    d.rows_ = static_cast<int>(cells.size());

    std::set<std::string> seen;
    for (const auto& raw : header) {
        ColumnSpec spec;
        spec.name = std::string(trim(raw));
        if (spec.name.empty()) throw ParseError(d.name_ + ": empty column name");
        if (!seen.insert(spec.name).second)
            throw ParseError(d.name_ + ": duplicate column name '" + spec.name + "'");
        if (spec.name.back() == '+') {
            spec.kind = ColumnKind::Objective;
            spec.direction = Direction::Maximize;
        } else if (spec.name.back() == '-') {
            spec.kind = ColumnKind::Objective;
            spec.direction = Direction::Minimize;
        }
        d.columns_.push_back(std::move(spec));
    }

    const int n_cols = static_cast<int>(d.columns_.size());
    for (std::size_t r = 0; r < cells.size(); ++r) {
        if (static_cast<int>(cells[r].size()) != n_cols)
            throw ParseError(d.name_ + ": row " + std::to_string(r + 1) + " has " +
                             std::to_string(cells[r].size()) + " cells, expected " +
                             std::to_string(n_cols));
    }

    for (int c = 0; c < n_cols; ++c) {
        ColumnSpec& spec = d.columns_[c];
        if (spec.kind == ColumnKind::Objective) {
            std::vector<double> col(cells.size());
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (std::size_t r = 0; r < cells.size(); ++r) {
                const auto v = parse_number(cells[r][c]);
                if (!v)
                    throw ParseError(d.name_ + ": objective '" + spec.name + "' row " +
                                     std::to_string(r + 1) + ": unparsable cell '" +
                                     cells[r][c] + "'");
                col[r] = *v;
                lo = std::min(lo, *v);
                hi = std::max(hi, *v);
            }
            spec.lo = lo;
            spec.hi = hi;
            d.obj_col_.push_back(c);
            d.obj_.push_back(std::move(col));
            continue;
        }

        // Decision column: numeric iff every non-missing cell parses.
        bool numeric = true;
        for (std::size_t r = 0; r < cells.size() && numeric; ++r) {
            if (is_missing_token(cells[r][c])) continue;
            if (!parse_number(cells[r][c])) numeric = false;
        }

        DecCol col;
        col.numeric = numeric;
        if (numeric) {
            spec.kind = ColumnKind::DecisionNumeric;
            col.num.resize(cells.size(), kNaN);
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (std::size_t r = 0; r < cells.size(); ++r) {
                if (is_missing_token(cells[r][c])) continue;
                col.num[r] = *parse_number(cells[r][c]);
                lo = std::min(lo, col.num[r]);
                hi = std::max(hi, col.num[r]);
            }
            if (lo <= hi) {
                spec.lo = lo;
                spec.hi = hi;
            }
        } else {
            spec.kind = ColumnKind::DecisionCategorical;
            std::set<std::string> toks;
            for (std::size_t r = 0; r < cells.size(); ++r) {
                if (!is_missing_token(cells[r][c])) toks.insert(std::string(trim(cells[r][c])));
            }
            col.cats.assign(toks.begin(), toks.end());
            col.code.resize(cells.size(), -1);
            for (std::size_t r = 0; r < cells.size(); ++r) {
                if (is_missing_token(cells[r][c])) continue;
                const auto t = std::string(trim(cells[r][c]));
                const auto it = std::lower_bound(col.cats.begin(), col.cats.end(), t);
                col.code[r] = static_cast<int>(it - col.cats.begin());
            }
        }
        d.dec_col_.push_back(c);
        d.dec_.push_back(std::move(col));
    }

    if (d.obj_.empty()) throw ParseError(d.name_ + ": zero objective columns");
    if (d.dec_.empty()) throw ParseError(d.name_ + ": zero decision columns");
    return d;
}

std::vector<double> Dataset::y_row(int row) const {
    std::vector<double> out(obj_.size());
    for (std::size_t j = 0; j < obj_.size(); ++j) out[j] = obj_[j][row];
    return out;
}

double Dataset::y_norm1(int row, int j) const {
    const auto& spec = columns_[obj_col_[j]];
    return norm01(obj_[j][row], spec.lo, spec.hi);
}

std::vector<double> Dataset::y_norm(int row) const {
    std::vector<double> out(obj_.size());
    for (std::size_t j = 0; j < obj_.size(); ++j) out[j] = y_norm1(row, static_cast<int>(j));
    return out;
}

std::vector<double> Dataset::to_min_norm(const std::vector<double>& y_raw) const {
    std::vector<double> out(obj_.size());
    for (std::size_t j = 0; j < obj_.size(); ++j) {
        const auto& spec = columns_[obj_col_[j]];
        const double v = norm01(y_raw[j], spec.lo, spec.hi);
        out[j] = spec.direction == Direction::Maximize ? 1.0 - v : v;
    }
    return out;
}

std::vector<double> Dataset::y_min_norm(int row) const { return to_min_norm(y_row(row)); }

bool Dataset::x_missing(int row, int k) const {
    const auto& col = dec_[k];
    return col.numeric ? std::isnan(col.num[row]) : col.code[row] < 0;
}

double Dataset::x_norm(int row, int k) const {
    const auto& spec = columns_[dec_col_[k]];
    return norm01(dec_[k].num[row], spec.lo, spec.hi);
}

void Dataset::write_csv(std::ostream& out) const {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (c) out << ',';
        out << columns_[c].name;
    }
    out << '\n';
    for (int r = 0; r < rows_; ++r) {
        int k = 0, j = 0;
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (c) out << ',';
            if (columns_[c].kind == ColumnKind::Objective) {
                out << fmt_double(obj_[j][r]);
                ++j;
            } else {
                if (x_missing(r, k)) {
                    out << '?';
                } else if (dec_[k].numeric) {
                    out << fmt_double(dec_[k].num[r]);
                } else {
                    out << dec_[k].cats[dec_[k].code[r]];
                }
                ++k;
            }
        }
        out << '\n';
    }
}

void Dataset::write_csv(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    write_csv(out);
}

DecisionPoint decision_point(const Dataset& d, int row) {
    DecisionPoint p;
    const int k = d.n_decisions();
    p.num.assign(k, kNaN);
    p.code.assign(k, -1);
    for (int i = 0; i < k; ++i) {
        if (d.x_missing(row, i)) continue;
        if (d.x_is_numeric(i))
            p.num[i] = d.x_norm(row, i);
        else
            p.code[i] = d.x_code(row, i);
    }
    return p;
}

namespace {

double delta_numeric(double a, double b) {
    const bool ma = std::isnan(a), mb = std::isnan(b);
    if (ma && mb) return 1.0;
    if (ma) return std::max(b, 1.0 - b);
    if (mb) return std::max(a, 1.0 - a);
    return std::abs(a - b);
}

double delta_categorical(int a, int b) {
    if (a < 0 || b < 0) return 1.0;  // missing on either side: assume unequal
    return a == b ? 0.0 : 1.0;
}

}  // namespace

double x_distance(const Dataset& d, const DecisionPoint& a, const DecisionPoint& b) {
    const int k = d.n_decisions();
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        const double delta = d.x_is_numeric(i) ? delta_numeric(a.num[i], b.num[i])
                                               : delta_categorical(a.code[i], b.code[i]);
        sum += delta * delta;
    }
    return std::sqrt(sum / static_cast<double>(k));
}

double x_distance(const Dataset& d, int row, const DecisionPoint& b) {
    const int k = d.n_decisions();
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        double delta;
        if (d.x_is_numeric(i)) {
            const double a = d.x_missing(row, i) ? kNaN : d.x_norm(row, i);
            delta = delta_numeric(a, b.num[i]);
        } else {
            delta = delta_categorical(d.x_code(row, i), b.code[i]);
        }
        sum += delta * delta;
    }
    return std::sqrt(sum / static_cast<double>(k));
}

double x_distance(const Dataset& d, int row_a, int row_b) {
    return x_distance(d, row_a, decision_point(d, row_b));
}

Pool::Pool(const Dataset& d, int budget) : d_(&d), budget_(budget) {
    if (budget < 0) throw Error("negative budget");
    revealed_.assign(d.rows(), 0);
}

bool Pool::is_revealed(int id) const {
    return id >= 0 && id < d_->rows() && revealed_[id];
}

std::vector<double> Pool::reveal(int id) {
    if (id < 0 || id >= d_->rows())
        throw Error("unknown row id " + std::to_string(id) + " in " + d_->name());
    if (revealed_[id]) return d_->y_row(id);
    if (spent_ >= budget_)
        throw BudgetExhausted(d_->name() + ": budget " + std::to_string(budget_) + " exhausted");
    revealed_[id] = 1;
    ++spent_;
    order_.push_back(id);
    return d_->y_row(id);
}

}  // namespace poolopt

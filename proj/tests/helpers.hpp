#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "poolopt/dataset.hpp"
#include "poolopt/pareto.hpp"

namespace testutil {

// Writes a file into a fresh per-test temp directory and removes it on
// destruction.
class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        for (int i = 0;; ++i) {
            auto candidate = base / ("poolopt-test-" + std::to_string(::getpid()) + "-" +
                                     std::to_string(counter_++) + "-" + std::to_string(i));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                dir_ = candidate;
                break;
            }
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    const std::filesystem::path& path() const { return dir_; }

    std::filesystem::path write(const std::string& name, const std::string& content) const {
        const auto p = dir_ / name;
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p;
    }

private:
    std::filesystem::path dir_;
    static inline int counter_ = 0;
};

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline std::filesystem::path data_dir() { return std::filesystem::path(POOLOPT_DATA_DIR); }

inline std::vector<std::filesystem::path> bundled_datasets() {
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::directory_iterator(data_dir()))
        if (entry.path().extension() == ".csv") out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

// O(N^2) non-dominated filter straight from the dominance definition
// (minimized space); the independent oracle for true_front.
inline std::vector<int> brute_front(const std::vector<std::vector<double>>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<int> keep;
    for (int i = 0; i < n; ++i) {
        bool dead = false;
        for (int j = 0; j < n && !dead; ++j) {
            if (j == i) continue;
            bool no_worse = true, better = false;
            for (std::size_t k = 0; k < pts[i].size(); ++k) {
                if (pts[j][k] > pts[i][k]) no_worse = false;
                if (pts[j][k] < pts[i][k]) better = true;
            }
            if (no_worse && better) dead = true;               // strictly dominated
            if (pts[j] == pts[i] && j < i) dead = true;        // duplicate, keep lowest id
        }
        if (!dead) keep.push_back(i);
    }
    return keep;
}

// Pair-enumeration effect size oracle: (#a>b - #a<b) / (|a|*|b|).
inline double brute_delta(const std::vector<double>& a, const std::vector<double>& b) {
    long gt = 0, lt = 0;
    for (const double x : a) {
        for (const double y : b) {
            if (x > y) ++gt;
            if (x < y) ++lt;
        }
    }
    return static_cast<double>(gt - lt) / (static_cast<double>(a.size()) * b.size());
}

}  // namespace testutil

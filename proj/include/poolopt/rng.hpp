#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace poolopt {

// Deterministic random stream. All draws go through the helpers below
// instead of <random> distributions, whose output is implementation
// defined; this keeps runs byte-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), unbiased via rejection.
    std::size_t index(std::size_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return static_cast<std::size_t>(v % n);
    }

    // Standard normal via Box-Muller (two fresh uniforms per call).
    double normal() {
        const double u1 = 1.0 - unit();  // (0, 1]
        const double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    // Moves a uniform random m-subset of v to the front, in draw order.
    template <typename T>
    void partial_shuffle(std::vector<T>& v, std::size_t m) {
        m = std::min(m, v.size());
        for (std::size_t i = 0; i < m; ++i) {
            std::swap(v[i], v[i + index(v.size() - i)]);
        }
    }

    // k distinct values from [0, n), in draw order.
    std::vector<int> sample_indices(int n, int k) {
        std::vector<int> ids(n);
        for (int i = 0; i < n; ++i) ids[i] = i;
        partial_shuffle(ids, static_cast<std::size_t>(k));
        ids.resize(static_cast<std::size_t>(std::min(k, n)));
        return ids;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace poolopt

#pragma once

// Shared helpers for randomized tests. The generator is seeded mt19937_64
// with explicit mappings so failures reproduce across platforms.

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "freegad/graph.hpp"

namespace test_support {

class Rand {
public:
    explicit Rand(std::uint64_t seed) : eng_(seed) {}

    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    std::size_t index(std::size_t bound) { return eng_() % bound; }

private:
    std::mt19937_64 eng_;
};

inline freegad::EdgeList random_edges(Rand& rng, std::size_t n, std::size_t count) {
    freegad::EdgeList edges;
    for (std::size_t i = 0; i < count; ++i) {
        edges.emplace_back(static_cast<std::int64_t>(rng.index(n)),
                           static_cast<std::int64_t>(rng.index(n)));
    }
    return edges;
}

inline freegad::FeatureMatrix random_features(Rand& rng, std::size_t n, std::size_t m,
                                              double scale = 2.0) {
    freegad::FeatureMatrix x(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) x.at(i, j) = rng.uniform(-scale, scale);
    }
    return x;
}

// |a - b| <= tol * max(1, |a|, |b|)
inline bool near(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace test_support

#pragma once

#include <cstdint>

#include "freegad/dataset.hpp"

namespace freegad {

// Seeded community-structured benchmark graph with injected anomalies.
// Structural anomalies are groups of random nodes wired into cliques;
// contextual anomalies have their feature row replaced by the row of the
// most dissimilar node among 50 random candidates. Injected nodes are
// labeled 1, everything else 0. Output is a pure function of the params.
struct SyntheticParams {
    std::size_t n = 1000;          // node count
    std::size_t m = 16;            // feature dimension
    std::uint64_t seed = 1;
    std::size_t n_cliques = 3;     // structural anomaly groups
    std::size_t clique_size = 5;   // nodes per group
    std::size_t n_contextual = 15; // contextual anomalies

    // Anomalies must stay sparse: n_cliques*clique_size + n_contextual <= n/4.
    void validate() const;         // throws InvalidParams
};

Dataset generate_synthetic(const SyntheticParams& params);

} // namespace freegad

#pragma once

#include <cstddef>
#include <vector>

#include "freegad/encoder.hpp"
#include "freegad/graph.hpp"

namespace freegad {

// Anchor node ids, each list sorted ascending, plus the affinity vector the
// selection was based on. The two lists are disjoint and have equal size.
struct AnchorSet {
    std::vector<NodeId> positive;   // highest-affinity nodes
    std::vector<NodeId> negative;   // lowest-affinity nodes
    std::vector<double> affinity;   // length n
};

// Per-node similarity between raw features and the mixed representation.
// Throws ShapeMismatch when the matrices disagree on shape.
std::vector<double> node_affinity(const FeatureMatrix& raw, const FeatureMatrix& mixed,
                                  double sigma, SimMode mode, int threads = 1);

// Rank nodes by affinity (stable descending sort, ascending node id on ties)
// and take the first k as positive and the last k as negative anchors.
// Throws KZero when k < 1 and KTooLarge when 2k > n.
AnchorSet select_anchors(std::vector<double> affinity, std::size_t k);

} // namespace freegad

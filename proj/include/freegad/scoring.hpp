#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "freegad/anchors.hpp"
#include "freegad/graph.hpp"

namespace freegad {

// Statistic applied to a node's distance set. `sum` is min + max + mean;
// the other modes keep a single component.
enum class StatMode { sum, min, max, avg };

StatMode parse_stat_mode(std::string_view name);
std::string_view to_string(StatMode mode);

struct ScoringConfig {
    double alpha = 0.5;                 // weight of the positive-anchor part
    double beta = 0.5;                  // weight of the negative-anchor part
    StatMode stat_mode = StatMode::sum;
    int threads = 1;

    void validate() const;              // throws InvalidParams
};

// Final anomaly scores plus the two anchor-distance statistics they combine.
// positive_part/negative_part are empty for score vectors read from disk.
struct ScoreVector {
    std::vector<double> scores;
    std::vector<double> positive_part;
    std::vector<double> negative_part;
    std::vector<std::int8_t> labels;    // optional 0/1 labels, may be empty
};

// Euclidean distances from every row of h to the given anchor rows (n x k).
// A node that is itself an anchor keeps its zero self-distance.
FeatureMatrix anchor_distances(const FeatureMatrix& mixed, std::span<const NodeId> anchors,
                               int threads = 1);

// Collapse one distance set to a scalar. Throws EmptyDistanceSet.
double stat_score(std::span<const double> distances, StatMode mode = StatMode::sum);

// score_i = alpha * stat(distances to positive) - beta * stat(distances to
// negative). Adding a constant vector to every row of `mixed` leaves the
// scores unchanged up to floating-point roundoff.
ScoreVector final_scores(const FeatureMatrix& mixed, const AnchorSet& anchors,
                         const ScoringConfig& cfg);

} // namespace freegad

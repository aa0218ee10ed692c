#pragma once

#include <cstdint>
#include <vector>

#include "freegad/anchors.hpp"
#include "freegad/encoder.hpp"
#include "freegad/graph.hpp"
#include "freegad/scoring.hpp"

namespace freegad {

struct PipelineConfig {
    int layers = 8;                     // propagation depth L
    std::size_t anchor_count = 20;      // K per anchor set
    double alpha = 0.5;
    double beta = 0.5;
    double sigma = 1e-8;
    SimMode sim_mode = SimMode::paper;
    StatMode stat_mode = StatMode::sum;
    int threads = 1;

    void validate() const;              // throws InvalidParams
};

struct StageTimes {
    double encode = 0.0;
    double anchors = 0.0;
    double scoring = 0.0;

    double total() const { return encode + anchors + scoring; }
};

struct PipelineResult {
    ScoreVector scores;
    AnchorSet anchors;
    StageTimes times;
};

// encode -> node affinities -> anchor selection -> distance scoring.
// Deterministic: re-running with the same inputs reproduces every score
// bit-exactly, independent of the thread count.
PipelineResult run_pipeline(const SparseGraph& graph, const FeatureMatrix& features,
                            const PipelineConfig& cfg);

// Hyperparameter search. Grid values are the cross product of the four
// lists; random trials draw from the documented search ranges (layers 1..20,
// anchors 10..min(100, n/2), alpha/beta in [0, 1]) using the given seed.
struct GridSpec {
    std::vector<int> layer_values;
    std::vector<std::size_t> anchor_values;
    std::vector<double> alpha_values;
    std::vector<double> beta_values;
    std::size_t random_trials = 0;
    std::uint64_t seed = 0;
    double sigma = 1e-8;
    SimMode sim_mode = SimMode::paper;
    StatMode stat_mode = StatMode::sum;
    int threads = 1;
};

struct GridTrial {
    int layers = 0;
    std::size_t anchor_count = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double auroc_value = 0.0;
    double auprc_value = 0.0;
};

struct GridResult {
    std::vector<GridTrial> trials;   // sorted by (layers, anchors, alpha, beta)
    GridTrial best;                  // highest AUROC; ties go to the earlier trial
};

// Evaluates every candidate against the labels. Encoding is shared across
// candidates that differ only in anchor count or score weights, so the
// search costs one encode per distinct layer value. Throws InvalidParams for
// values outside the search ranges and DegenerateLabels for single-class
// label vectors.
GridResult grid_search(const SparseGraph& graph, const FeatureMatrix& features,
                       const std::vector<std::int8_t>& labels, const GridSpec& spec);

} // namespace freegad

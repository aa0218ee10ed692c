#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "freegad/graph.hpp"

namespace freegad {

// Similarity used by the affinity measure.
//   paper  : dot(u, v) / (|u|^2 * |v|^2 + sigma)   -- squared-norm denominator
//   cosine : dot(u, v) / (|u| * |v| + sigma)
enum class SimMode { paper, cosine };

SimMode parse_sim_mode(std::string_view name);
std::string_view to_string(SimMode mode);

struct EncoderConfig {
    int layers = 8;                      // propagation depth L >= 1
    double sigma = 1e-8;                 // denominator guard, > 0
    SimMode sim_mode = SimMode::paper;
    bool keep_layers = false;            // retain per-layer representations
    int threads = 1;

    void validate() const;               // throws InvalidParams
};

// Raw per-layer affinities and their per-node softmax, both n x L.
// Every weight row sums to one.
struct GateWeights {
    FeatureMatrix raw_affinity;
    FeatureMatrix weights;
};

struct Representations {
    std::vector<FeatureMatrix> per_layer;  // h^(1)..h^(L); empty unless kept
    FeatureMatrix mixed;                   // mean of the layer representations
};

// Parameter-free propagation: returns [x^(0), x^(1), ..., x^(layers)] where
// x^(0) is a copy of x and x^(l) = A @ x^(l-1).
std::vector<FeatureMatrix> propagate(const SparseGraph& graph, const FeatureMatrix& x,
                                     int layers, int threads = 1);

// Similarity between one node's raw and propagated feature rows.
double affinity(std::span<const double> raw, std::span<const double> propagated,
                double sigma, SimMode mode);

// Row-wise softmax over the n x L affinity matrix, stabilized by subtracting
// each row's maximum before exponentiation.
GateWeights gate_weights(FeatureMatrix affinities);

// Per-node convex blend h_i = (1 - w_i) * propagated_i + w_i * raw_i.
// A gate of exactly 0 or 1 reproduces the corresponding input row bit-exactly.
FeatureMatrix gated_residual(const FeatureMatrix& raw, const FeatureMatrix& propagated,
                             std::span<const double> gate, int threads = 1);

// Entrywise mean of the layer representations.
FeatureMatrix mix(const std::vector<FeatureMatrix>& layer_reps, int threads = 1);

// Full propagation-only encoding: propagate, per-layer affinities, softmax
// gates, gated residuals, and their mean. Two runs over the same inputs
// produce bit-identical output.
Representations encode(const SparseGraph& graph, const FeatureMatrix& x,
                       const EncoderConfig& cfg);

} // namespace freegad

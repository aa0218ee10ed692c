#include "freegad/encoder.hpp"

#include <cmath>
#include <string>

#include "freegad/errors.hpp"
#include "freegad/parallel.hpp"

namespace freegad {

SimMode parse_sim_mode(std::string_view name) {
    if (name == "paper") return SimMode::paper;
    if (name == "cosine") return SimMode::cosine;
    throw InvalidParams("unknown similarity mode '" + std::string(name) +
                        "' (expected paper or cosine)");
}

std::string_view to_string(SimMode mode) {
    return mode == SimMode::paper ? "paper" : "cosine";
}

void EncoderConfig::validate() const {
    if (layers < 1) throw InvalidParams("layers must be >= 1, got " + std::to_string(layers));
    if (!(sigma > 0.0)) throw InvalidParams("sigma must be > 0");
}

std::vector<FeatureMatrix> propagate(const SparseGraph& graph, const FeatureMatrix& x,
                                     int layers, int threads) {
    if (layers < 1) throw InvalidParams("layers must be >= 1, got " + std::to_string(layers));
    if (x.rows() != graph.num_nodes()) {
        throw ShapeMismatch("matrix has " + std::to_string(x.rows()) + " rows, graph has " +
                            std::to_string(graph.num_nodes()) + " nodes");
    }
    std::vector<FeatureMatrix> stack;
    stack.reserve(static_cast<std::size_t>(layers) + 1);
    stack.push_back(x);
    for (int l = 1; l <= layers; ++l) stack.push_back(spmv(graph, stack.back(), threads));
    return stack;
}

double affinity(std::span<const double> raw, std::span<const double> propagated,
                double sigma, SimMode mode) {
    if (raw.size() != propagated.size()) {
        throw ShapeMismatch("affinity rows differ in length: " + std::to_string(raw.size()) +
                            " vs " + std::to_string(propagated.size()));
    }
    double dot = 0.0, nraw = 0.0, nprop = 0.0;
    for (std::size_t j = 0; j < raw.size(); ++j) {
        dot += raw[j] * propagated[j];
        nraw += raw[j] * raw[j];
        nprop += propagated[j] * propagated[j];
    }
    const double denom = mode == SimMode::paper ? nraw * nprop + sigma
                                                : std::sqrt(nraw) * std::sqrt(nprop) + sigma;
    return dot / denom;
}

GateWeights gate_weights(FeatureMatrix affinities) {
    if (affinities.rows() == 0 || affinities.cols() == 0) {
        throw InvalidParams("affinity matrix must be non-empty");
    }
    const std::size_t n = affinities.rows();
    const std::size_t layers = affinities.cols();
    GateWeights gw;
    gw.weights = FeatureMatrix(n, layers);
    for (std::size_t i = 0; i < n; ++i) {
        const double* a = affinities.row(i);
        double* w = gw.weights.row(i);
        double mx = a[0];
        for (std::size_t l = 1; l < layers; ++l) mx = std::max(mx, a[l]);
        double sum = 0.0;
        for (std::size_t l = 0; l < layers; ++l) {
            w[l] = std::exp(a[l] - mx);
            sum += w[l];
        }
        for (std::size_t l = 0; l < layers; ++l) w[l] /= sum;
    }
    gw.raw_affinity = std::move(affinities);
    return gw;
}

FeatureMatrix gated_residual(const FeatureMatrix& raw, const FeatureMatrix& propagated,
                             std::span<const double> gate, int threads) {
    if (raw.rows() != propagated.rows() || raw.cols() != propagated.cols()) {
        throw ShapeMismatch("raw and propagated matrices differ in shape");
    }
    if (gate.size() != raw.rows()) {
        throw ShapeMismatch("gate vector has " + std::to_string(gate.size()) +
                            " entries for " + std::to_string(raw.rows()) + " rows");
    }
    const std::size_t m = raw.cols();
    FeatureMatrix h(raw.rows(), m);
    parallel_chunks(raw.rows(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double w = gate[i];
            const double* xr = raw.row(i);
            const double* xp = propagated.row(i);
            double* out = h.row(i);
            if (w == 0.0) {
                for (std::size_t j = 0; j < m; ++j) out[j] = xp[j];
            } else if (w == 1.0) {
                for (std::size_t j = 0; j < m; ++j) out[j] = xr[j];
            } else {
                for (std::size_t j = 0; j < m; ++j) out[j] = xp[j] + w * (xr[j] - xp[j]);
            }
        }
    });
    return h;
}

FeatureMatrix mix(const std::vector<FeatureMatrix>& layer_reps, int threads) {
    if (layer_reps.empty()) throw InvalidParams("mix requires at least one layer");
    for (const auto& rep : layer_reps) {
        if (rep.rows() != layer_reps.front().rows() || rep.cols() != layer_reps.front().cols()) {
            throw ShapeMismatch("layer representations differ in shape");
        }
    }
    // Running mean: identical layers average to themselves bit-exactly.
    FeatureMatrix acc = layer_reps.front();
    for (std::size_t l = 1; l < layer_reps.size(); ++l) {
        const double inv = 1.0 / static_cast<double>(l + 1);
        const FeatureMatrix& rep = layer_reps[l];
        parallel_chunks(acc.rows(), threads, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                double* a = acc.row(i);
                const double* r = rep.row(i);
                for (std::size_t j = 0; j < acc.cols(); ++j) a[j] += (r[j] - a[j]) * inv;
            }
        });
    }
    return acc;
}

Representations encode(const SparseGraph& graph, const FeatureMatrix& x,
                       const EncoderConfig& cfg) {
    cfg.validate();
    auto stack = propagate(graph, x, cfg.layers, cfg.threads);

    const std::size_t n = x.rows();
    const auto layers = static_cast<std::size_t>(cfg.layers);
    FeatureMatrix affinities(n, layers);
    parallel_chunks(n, cfg.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            for (std::size_t l = 1; l <= layers; ++l) {
                affinities.at(i, l - 1) =
                    affinity(stack[0].row_span(i), stack[l].row_span(i), cfg.sigma, cfg.sim_mode);
            }
        }
    });
    GateWeights gates = gate_weights(std::move(affinities));

    Representations out;
    std::vector<double> column(n);
    for (std::size_t l = 1; l <= layers; ++l) {
        for (std::size_t i = 0; i < n; ++i) column[i] = gates.weights.at(i, l - 1);
        FeatureMatrix h = gated_residual(stack[0], stack[l], column, cfg.threads);
        if (l == 1) {
            out.mixed = h;
        } else {
            const double inv = 1.0 / static_cast<double>(l);
            parallel_chunks(n, cfg.threads, [&](std::size_t lo, std::size_t hi) {
                for (std::size_t i = lo; i < hi; ++i) {
                    double* a = out.mixed.row(i);
                    const double* r = h.row(i);
                    for (std::size_t j = 0; j < out.mixed.cols(); ++j) a[j] += (r[j] - a[j]) * inv;
                }
            });
        }
        if (cfg.keep_layers) out.per_layer.push_back(std::move(h));
    }
    return out;
}

} // namespace freegad

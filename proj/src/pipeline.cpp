#include "freegad/pipeline.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "freegad/errors.hpp"
#include "freegad/metrics.hpp"
#include "freegad/runtime.hpp"
#include "rng.hpp"

namespace freegad {

void PipelineConfig::validate() const {
    EncoderConfig enc;
    enc.layers = layers;
    enc.sigma = sigma;
    enc.validate();
    ScoringConfig sc;
    sc.alpha = alpha;
    sc.beta = beta;
    sc.validate();
    if (anchor_count < 1) throw KZero("anchor count must be at least 1");
}

PipelineResult run_pipeline(const SparseGraph& graph, const FeatureMatrix& features,
                            const PipelineConfig& cfg) {
    cfg.validate();
    PipelineResult res;
    WallTimer timer;

    EncoderConfig enc;
    enc.layers = cfg.layers;
    enc.sigma = cfg.sigma;
    enc.sim_mode = cfg.sim_mode;
    enc.threads = cfg.threads;
    const Representations reps = encode(graph, features, enc);
    res.times.encode = timer.elapsed_s();

    timer.restart();
    std::vector<double> aff =
        node_affinity(features, reps.mixed, cfg.sigma, cfg.sim_mode, cfg.threads);
    res.anchors = select_anchors(std::move(aff), cfg.anchor_count);
    res.times.anchors = timer.elapsed_s();

    timer.restart();
    ScoringConfig sc;
    sc.alpha = cfg.alpha;
    sc.beta = cfg.beta;
    sc.stat_mode = cfg.stat_mode;
    sc.threads = cfg.threads;
    res.scores = final_scores(reps.mixed, res.anchors, sc);
    res.times.scoring = timer.elapsed_s();
    return res;
}

namespace {

struct Candidate {
    int layers;
    std::size_t anchors;
    double alpha;
    double beta;

    auto key() const { return std::tie(layers, anchors, alpha, beta); }
    bool operator<(const Candidate& o) const { return key() < o.key(); }
    bool operator==(const Candidate& o) const { return key() == o.key(); }
};

void check_search_ranges(const Candidate& c, std::size_t n) {
    if (c.layers < 1 || c.layers > 20) {
        throw InvalidParams("grid layers value " + std::to_string(c.layers) +
                            " outside the search range [1, 20]");
    }
    if (c.anchors < 10 || c.anchors > 100) {
        throw InvalidParams("grid anchor value " + std::to_string(c.anchors) +
                            " outside the search range [10, 100]");
    }
    if (2 * c.anchors > n) {
        throw KTooLarge("2K = " + std::to_string(2 * c.anchors) + " exceeds node count " +
                        std::to_string(n));
    }
    if (c.alpha < 0.0 || c.alpha > 1.0 || c.beta < 0.0 || c.beta > 1.0) {
        throw InvalidParams("grid alpha/beta values must lie in [0, 1]");
    }
}

} // namespace

GridResult grid_search(const SparseGraph& graph, const FeatureMatrix& features,
                       const std::vector<std::int8_t>& labels, const GridSpec& spec) {
    const std::size_t n = graph.num_nodes();
    if (labels.size() != n) {
        throw ShapeMismatch("labels length " + std::to_string(labels.size()) +
                            " does not match node count " + std::to_string(n));
    }

    std::vector<Candidate> candidates;
    for (int l : spec.layer_values) {
        for (std::size_t k : spec.anchor_values) {
            for (double a : spec.alpha_values) {
                for (double b : spec.beta_values) candidates.push_back({l, k, a, b});
            }
        }
    }
    if (spec.random_trials > 0) {
        const std::size_t k_hi = std::min<std::size_t>(100, n / 2);
        if (k_hi < 10) {
            throw InvalidParams("random search needs at least 20 nodes, got " +
                                std::to_string(n));
        }
        Rng rng(spec.seed);
        for (std::size_t t = 0; t < spec.random_trials; ++t) {
            Candidate c;
            c.layers = 1 + static_cast<int>(rng.next_index(20));
            c.anchors = 10 + rng.next_index(k_hi - 10 + 1);
            c.alpha = rng.next_unit();
            c.beta = rng.next_unit();
            candidates.push_back(c);
        }
    }
    if (candidates.empty()) throw InvalidParams("hyperparameter search has no candidates");
    for (const Candidate& c : candidates) check_search_ranges(c, n);

    // Candidates sorted by (layers, anchors, alpha, beta): one encode per
    // layer value, one anchor selection + distance pass per anchor value.
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    GridResult result;
    bool have_best = false;
    std::size_t i = 0;
    while (i < candidates.size()) {
        const int layers = candidates[i].layers;
        EncoderConfig enc;
        enc.layers = layers;
        enc.sigma = spec.sigma;
        enc.sim_mode = spec.sim_mode;
        enc.threads = spec.threads;
        const Representations reps = encode(graph, features, enc);
        const std::vector<double> aff =
            node_affinity(features, reps.mixed, spec.sigma, spec.sim_mode, spec.threads);

        while (i < candidates.size() && candidates[i].layers == layers) {
            const std::size_t k = candidates[i].anchors;
            const AnchorSet anchors = select_anchors(aff, k);
            ScoringConfig sc;
            sc.alpha = 1.0;
            sc.beta = 1.0;
            sc.stat_mode = spec.stat_mode;
            sc.threads = spec.threads;
            const ScoreVector parts = final_scores(reps.mixed, anchors, sc);

            while (i < candidates.size() && candidates[i].layers == layers &&
                   candidates[i].anchors == k) {
                const Candidate& c = candidates[i];
                LabeledScores ls;
                ls.labels = labels;
                ls.scores.resize(n);
                for (std::size_t row = 0; row < n; ++row) {
                    ls.scores[row] =
                        c.alpha * parts.positive_part[row] - c.beta * parts.negative_part[row];
                }
                GridTrial trial;
                trial.layers = c.layers;
                trial.anchor_count = c.anchors;
                trial.alpha = c.alpha;
                trial.beta = c.beta;
                trial.auroc_value = auroc(ls);
                trial.auprc_value = auprc(ls);
                result.trials.push_back(trial);
                if (!have_best || trial.auroc_value > result.best.auroc_value) {
                    result.best = trial;
                    have_best = true;
                }
                ++i;
            }
        }
    }
    return result;
}

} // namespace freegad

#include "freegad/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "freegad/errors.hpp"
#include "freegad/parallel.hpp"

namespace freegad {

StatMode parse_stat_mode(std::string_view name) {
    if (name == "sum") return StatMode::sum;
    if (name == "min") return StatMode::min;
    if (name == "max") return StatMode::max;
    if (name == "avg") return StatMode::avg;
    throw InvalidParams("unknown statistic mode '" + std::string(name) +
                        "' (expected sum, min, max or avg)");
}

std::string_view to_string(StatMode mode) {
    switch (mode) {
        case StatMode::sum: return "sum";
        case StatMode::min: return "min";
        case StatMode::max: return "max";
        default: return "avg";
    }
}

void ScoringConfig::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidParams("alpha must lie in [0, 1]");
    if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidParams("beta must lie in [0, 1]");
}

namespace {

double euclidean(const double* a, const double* b, std::size_t m) {
    double sq = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double d = a[j] - b[j];
        sq += d * d;
    }
    return std::sqrt(sq);
}

void check_anchor_ids(std::span<const NodeId> anchors, std::size_t n) {
    for (NodeId a : anchors) {
        if (a >= n) {
            throw IndexOutOfRange("anchor id " + std::to_string(a) + " outside [0, " +
                                  std::to_string(n) + ")");
        }
    }
}

} // namespace

FeatureMatrix anchor_distances(const FeatureMatrix& mixed, std::span<const NodeId> anchors,
                               int threads) {
    check_anchor_ids(anchors, mixed.rows());
    FeatureMatrix d(mixed.rows(), anchors.size());
    parallel_chunks(mixed.rows(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            for (std::size_t k = 0; k < anchors.size(); ++k) {
                d.at(i, k) = euclidean(mixed.row(i), mixed.row(anchors[k]), mixed.cols());
            }
        }
    });
    return d;
}

double stat_score(std::span<const double> distances, StatMode mode) {
    if (distances.empty()) throw EmptyDistanceSet("distance statistic over an empty set");
    double mn = distances[0], mx = distances[0], sum = 0.0;
    for (double d : distances) {
        mn = std::min(mn, d);
        mx = std::max(mx, d);
        sum += d;
    }
    const double avg = sum / static_cast<double>(distances.size());
    switch (mode) {
        case StatMode::sum: return mn + mx + avg;
        case StatMode::min: return mn;
        case StatMode::max: return mx;
        default: return avg;
    }
}

ScoreVector final_scores(const FeatureMatrix& mixed, const AnchorSet& anchors,
                         const ScoringConfig& cfg) {
    cfg.validate();
    if (anchors.positive.empty() || anchors.negative.empty()) {
        throw EmptyDistanceSet("both anchor sets must be non-empty");
    }
    check_anchor_ids(anchors.positive, mixed.rows());
    check_anchor_ids(anchors.negative, mixed.rows());
    for (NodeId id : anchors.positive) {
        if (std::binary_search(anchors.negative.begin(), anchors.negative.end(), id)) {
            throw InvalidParams("anchor sets overlap at node " + std::to_string(id));
        }
    }

    const std::size_t n = mixed.rows();
    const std::size_t m = mixed.cols();
    ScoreVector sv;
    sv.scores.resize(n);
    sv.positive_part.resize(n);
    sv.negative_part.resize(n);
    parallel_chunks(n, cfg.threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> dp(anchors.positive.size());
        std::vector<double> dn(anchors.negative.size());
        for (std::size_t i = lo; i < hi; ++i) {
            const double* xi = mixed.row(i);
            for (std::size_t k = 0; k < dp.size(); ++k) {
                dp[k] = euclidean(xi, mixed.row(anchors.positive[k]), m);
            }
            for (std::size_t k = 0; k < dn.size(); ++k) {
                dn[k] = euclidean(xi, mixed.row(anchors.negative[k]), m);
            }
            sv.positive_part[i] = stat_score(dp, cfg.stat_mode);
            sv.negative_part[i] = stat_score(dn, cfg.stat_mode);
            sv.scores[i] = cfg.alpha * sv.positive_part[i] - cfg.beta * sv.negative_part[i];
        }
    });
    return sv;
}

} // namespace freegad

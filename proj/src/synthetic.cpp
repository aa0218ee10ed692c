#include "freegad/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "freegad/errors.hpp"
#include "rng.hpp"

namespace freegad {

namespace {

constexpr std::size_t kCommunitySize = 50;   // target nodes per community
constexpr double kIntraProb = 0.85;          // chance an edge stays inside a community
constexpr std::size_t kEdgeFactor = 4;       // edge attempts per node (avg degree ~8)
constexpr double kCenterScale = 2.0;
constexpr double kNoiseScale = 0.4;
constexpr std::size_t kCandidatePool = 50;   // donors examined per contextual anomaly

double sq_distance(const double* a, const double* b, std::size_t m) {
    double sq = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double d = a[j] - b[j];
        sq += d * d;
    }
    return sq;
}

} // namespace

void SyntheticParams::validate() const {
    if (n < 1) throw InvalidParams("n must be >= 1");
    if (m < 1) throw InvalidParams("m must be >= 1");
    if (n_cliques > 0 && clique_size < 2) {
        throw InvalidParams("clique_size must be >= 2 when cliques are injected");
    }
    const std::size_t injected = n_cliques * clique_size + n_contextual;
    if (injected > n / 4) {
        throw InvalidParams("too many anomalies: " + std::to_string(injected) +
                            " injected nodes exceed n/4 = " + std::to_string(n / 4));
    }
}

Dataset generate_synthetic(const SyntheticParams& params) {
    params.validate();
    const std::size_t n = params.n;
    const std::size_t m = params.m;
    Rng rng(params.seed);

    // Nearly equal contiguous communities of ~kCommunitySize nodes.
    const std::size_t n_comm = std::max<std::size_t>(1, (n + kCommunitySize / 2) / kCommunitySize);
    auto comm_begin = [&](std::size_t c) { return c * n / n_comm; };
    auto comm_of = [&](std::size_t i) { return std::min(n_comm - 1, i * n_comm / n); };

    // Features: community center plus node noise.
    FeatureMatrix x(n, m);
    std::vector<double> centers(n_comm * m);
    for (double& v : centers) v = kCenterScale * rng.next_normal();
    for (std::size_t i = 0; i < n; ++i) {
        const double* center = centers.data() + comm_of(i) * m;
        double* row = x.row(i);
        for (std::size_t j = 0; j < m; ++j) row[j] = center[j] + kNoiseScale * rng.next_normal();
    }

    // Mostly-intra-community random edges.
    EdgeList edges;
    edges.reserve(n * kEdgeFactor);
    for (std::size_t t = 0; t < n * kEdgeFactor; ++t) {
        const std::size_t u = rng.next_index(n);
        std::size_t v;
        if (rng.next_unit() < kIntraProb) {
            const std::size_t c = comm_of(u);
            const std::size_t lo = comm_begin(c);
            const std::size_t hi = comm_begin(c + 1);
            v = lo + rng.next_index(hi - lo);
        } else {
            v = rng.next_index(n);
        }
        if (u != v) edges.emplace_back(static_cast<std::int64_t>(u), static_cast<std::int64_t>(v));
    }

    // Draw all victims without replacement: clique members first, then the
    // contextual ones, so the two groups never overlap.
    const std::size_t n_struct = params.n_cliques * params.clique_size;
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    std::vector<std::size_t> victims(n_struct + params.n_contextual);
    for (std::size_t t = 0; t < victims.size(); ++t) {
        const std::size_t pick = t + rng.next_index(n - t);
        std::swap(pool[t], pool[pick]);
        victims[t] = pool[t];
    }

    std::vector<std::int8_t> labels(n, 0);

    // Structural anomalies: wire each group into a clique.
    for (std::size_t c = 0; c < params.n_cliques; ++c) {
        const std::size_t* members = victims.data() + c * params.clique_size;
        for (std::size_t a = 0; a < params.clique_size; ++a) {
            labels[members[a]] = 1;
            for (std::size_t b = a + 1; b < params.clique_size; ++b) {
                edges.emplace_back(static_cast<std::int64_t>(members[a]),
                                   static_cast<std::int64_t>(members[b]));
            }
        }
    }

    // Contextual anomalies: replace the victim's features with those of the
    // most dissimilar node among random candidates. Distances are measured
    // on the pristine matrix so injections do not influence each other.
    const FeatureMatrix pristine = x;
    for (std::size_t t = 0; t < params.n_contextual; ++t) {
        const std::size_t victim = victims[n_struct + t];
        std::size_t donor = victim;
        double best = -1.0;
        for (std::size_t c = 0; c < kCandidatePool; ++c) {
            const std::size_t cand = rng.next_index(n);
            if (cand == victim) continue;
            const double d = sq_distance(pristine.row(victim), pristine.row(cand), m);
            if (d > best) {
                best = d;
                donor = cand;
            }
        }
        if (donor != victim) {
            std::copy(pristine.row(donor), pristine.row(donor) + m, x.row(victim));
        }
        labels[victim] = 1;
    }

    Dataset ds;
    ds.graph = SparseGraph::build_normalized(edges, n);
    ds.features = std::move(x);
    ds.labels = std::move(labels);
    ds.name = "synthetic-n" + std::to_string(n) + "-seed" + std::to_string(params.seed);
    return ds;
}

} // namespace freegad

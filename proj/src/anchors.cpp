#include "freegad/anchors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "freegad/errors.hpp"
#include "freegad/parallel.hpp"

namespace freegad {

std::vector<double> node_affinity(const FeatureMatrix& raw, const FeatureMatrix& mixed,
                                  double sigma, SimMode mode, int threads) {
    if (raw.rows() != mixed.rows() || raw.cols() != mixed.cols()) {
        throw ShapeMismatch("raw and mixed matrices differ in shape");
    }
    std::vector<double> out(raw.rows());
    parallel_chunks(raw.rows(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            out[i] = affinity(raw.row_span(i), mixed.row_span(i), sigma, mode);
        }
    });
    return out;
}

AnchorSet select_anchors(std::vector<double> affinity, std::size_t k) {
    const std::size_t n = affinity.size();
    if (k < 1) throw KZero("anchor count must be at least 1");
    if (2 * k > n) {
        throw KTooLarge("2K = " + std::to_string(2 * k) + " exceeds node count " +
                        std::to_string(n));
    }
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return affinity[a] > affinity[b]; });

    AnchorSet set;
    set.positive.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    set.negative.assign(order.end() - static_cast<std::ptrdiff_t>(k), order.end());
    std::sort(set.positive.begin(), set.positive.end());
    std::sort(set.negative.begin(), set.negative.end());
    set.affinity = std::move(affinity);
    return set;
}

} // namespace freegad

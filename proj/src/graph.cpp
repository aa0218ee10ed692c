#include "freegad/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "freegad/errors.hpp"
#include "freegad/parallel.hpp"

namespace freegad {

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
    if (data_.size() != rows_ * cols_) {
        throw ShapeMismatch("feature buffer holds " + std::to_string(data_.size()) +
                            " values, expected " + std::to_string(rows_ * cols_));
    }
}

bool FeatureMatrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

SparseGraph SparseGraph::build_normalized(const EdgeList& edges, std::size_t n) {
    if (n == 0) throw EmptyGraph("graph must have at least one node");
    const auto limit = static_cast<std::int64_t>(n);
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= limit || b < 0 || b >= limit) {
            throw IndexOutOfRange("edge endpoint (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ") outside [0, " + std::to_string(n) + ")");
        }
    }

    // Count slots per row: one self-loop plus both directions of every edge.
    std::vector<std::size_t> counts(n, 1);
    for (const auto& [a, b] : edges) {
        if (a != b) {
            ++counts[static_cast<std::size_t>(a)];
            ++counts[static_cast<std::size_t>(b)];
        }
    }
    std::vector<std::size_t> slots(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) slots[i + 1] = slots[i] + counts[i];

    std::vector<NodeId> padded(slots[n]);
    std::vector<std::size_t> cursor(slots.begin(), slots.end() - 1);
    for (std::size_t i = 0; i < n; ++i) padded[cursor[i]++] = static_cast<NodeId>(i);
    for (const auto& [a, b] : edges) {
        if (a == b) continue;
        padded[cursor[static_cast<std::size_t>(a)]++] = static_cast<NodeId>(b);
        padded[cursor[static_cast<std::size_t>(b)]++] = static_cast<NodeId>(a);
    }

    // Sort and deduplicate each row, then compact into the final CSR arrays.
    SparseGraph g;
    g.n_ = n;
    g.row_offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto begin = padded.begin() + static_cast<std::ptrdiff_t>(slots[i]);
        auto end = padded.begin() + static_cast<std::ptrdiff_t>(slots[i + 1]);
        std::sort(begin, end);
        auto last = std::unique(begin, end);
        g.row_offsets_[i + 1] = g.row_offsets_[i] +
                                static_cast<std::size_t>(std::distance(begin, last));
    }
    g.col_indices_.resize(g.row_offsets_[n]);
    for (std::size_t i = 0; i < n; ++i) {
        auto begin = padded.begin() + static_cast<std::ptrdiff_t>(slots[i]);
        std::copy(begin, begin + static_cast<std::ptrdiff_t>(g.row_offsets_[i + 1] - g.row_offsets_[i]),
                  g.col_indices_.begin() + static_cast<std::ptrdiff_t>(g.row_offsets_[i]));
    }

    // Entry (i, j) of the normalized adjacency is 1/sqrt(d_i * d_j).
    g.values_.resize(g.col_indices_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double di = static_cast<double>(g.row_offsets_[i + 1] - g.row_offsets_[i]);
        for (std::size_t k = g.row_offsets_[i]; k < g.row_offsets_[i + 1]; ++k) {
            const NodeId j = g.col_indices_[k];
            const double dj = static_cast<double>(g.row_offsets_[j + 1] - g.row_offsets_[j]);
            g.values_[k] = 1.0 / std::sqrt(di * dj);
        }
    }
    return g;
}

FeatureMatrix spmv(const SparseGraph& graph, const FeatureMatrix& x, int threads) {
    if (x.rows() != graph.num_nodes()) {
        throw ShapeMismatch("matrix has " + std::to_string(x.rows()) + " rows, graph has " +
                            std::to_string(graph.num_nodes()) + " nodes");
    }
    const std::size_t m = x.cols();
    FeatureMatrix y(x.rows(), m);
    const auto& offsets = graph.row_offsets();
    const auto& cols = graph.col_indices();
    const auto& vals = graph.values();
    parallel_chunks(graph.num_nodes(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double* out = y.row(i);
            for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) {
                const double w = vals[k];
                const double* src = x.row(cols[k]);
                for (std::size_t j = 0; j < m; ++j) out[j] += w * src[j];
            }
        }
    });
    return y;
}

} // namespace freegad

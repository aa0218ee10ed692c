#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace freegad {

using NodeId = std::uint32_t;

// Undirected input edges; endpoints are validated against the node count.
using EdgeList = std::vector<std::pair<std::int64_t, std::int64_t>>;

// Dense row-major n x m matrix of double-precision node features.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    FeatureMatrix(std::size_t rows, std::size_t cols);
    FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }
    std::span<const double> row_span(std::size_t i) const { return {row(i), cols_}; }

    double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool all_finite() const;

    friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Symmetrically normalized adjacency with self-loops, stored in CSR form.
//
// Construction binarizes and symmetrizes the input edges, inserts one
// self-loop per node, and scales entry (i, j) by 1/sqrt(d_i * d_j) where d_i
// counts the stored neighbors of i (self-loop included). Column indices are
// strictly increasing inside each row, every row contains its diagonal, and
// all stored values are positive. The structure depends only on the edge
// *set*, so any permutation of the input list builds the identical object.
class SparseGraph {
public:
    // An empty placeholder; build_normalized produces every usable graph.
    SparseGraph() = default;

    // Throws EmptyGraph when n == 0 and IndexOutOfRange when an endpoint
    // falls outside [0, n). Duplicate edges, reversed duplicates and explicit
    // self-loops collapse to a single entry.
    static SparseGraph build_normalized(const EdgeList& edges, std::size_t n);

    std::size_t num_nodes() const { return n_; }
    std::size_t nnz() const { return col_indices_.size(); }

    // Undirected edge count, self-loops excluded.
    std::size_t num_edges() const { return (nnz() - n_) / 2; }

    const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
    const std::vector<NodeId>& col_indices() const { return col_indices_; }
    const std::vector<double>& values() const { return values_; }

    std::span<const NodeId> neighbors(std::size_t i) const {
        return {col_indices_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
    }
    std::span<const double> weights(std::size_t i) const {
        return {values_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
    }

    friend bool operator==(const SparseGraph&, const SparseGraph&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> row_offsets_;
    std::vector<NodeId> col_indices_;
    std::vector<double> values_;
};

// y = A @ x. Each output row accumulates its neighbor rows in CSR order, so
// the result is bit-identical for every thread count. Throws ShapeMismatch
// when x has the wrong number of rows.
FeatureMatrix spmv(const SparseGraph& graph, const FeatureMatrix& x, int threads = 1);

} // namespace freegad

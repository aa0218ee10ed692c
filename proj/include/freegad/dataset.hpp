#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "freegad/graph.hpp"
#include "freegad/scoring.hpp"

namespace freegad {

// On-disk dataset directory layout:
//   edges.tsv    one undirected edge per line as two tab-separated zero-based
//                node ids; blank lines and lines starting with '#' ignored
//   features.bin little-endian u64 n, u64 m, then n*m float64 row-major
//   labels.tsv   optional; one 0/1 per line, n lines
//   meta.toml    key = value pairs; requires `name` (string) and `n` (integer)
struct Dataset {
    SparseGraph graph;
    FeatureMatrix features;
    std::vector<std::int8_t> labels;   // empty when labels.tsv is absent
    std::string name;
};

struct LoadOptions {
    bool standardize = false;     // per-column zero mean / unit variance
    bool row_normalize = false;   // L2-normalize each feature row
};

// Read a dataset directory and build the normalized graph. Missing files
// throw MissingFile, malformed content throws ParseError with the offending
// file and line, and disagreement between meta.toml, features.bin and
// labels.tsv throws ShapeMismatch. When both preprocessing options are set,
// columns are standardized before rows are normalized.
Dataset load_dataset(const std::filesystem::path& dir, const LoadOptions& opts = {});

// Just the labels.tsv file of a dataset directory.
std::vector<std::int8_t> load_labels(const std::filesystem::path& dir);

// Write the dataset directory format above. Edges are emitted once per
// undirected pair (i < j), self-loops excluded.
void save_dataset(const Dataset& ds, const std::filesystem::path& dir);

// Scores file: header `node_id<TAB>score[<TAB>label]`, one row per node in
// node order. Scores are printed with enough digits that reading the file
// back reproduces every double bit-exactly.
void save_scores(const ScoreVector& sv, const std::filesystem::path& file);
ScoreVector load_scores(const std::filesystem::path& file);

} // namespace freegad

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "freegad/dataset.hpp"
#include "freegad/errors.hpp"
#include "freegad/synthetic.hpp"
#include "test_support.hpp"

using namespace freegad;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("freegad_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& file, const std::string& content) {
    std::ofstream out(file);
    out << content;
}

// a minimal well-formed dataset to mutate in the error tests
fs::path broken_base(const std::string& name) {
    const fs::path dir = scratch_dir(name);
    write_file(dir / "meta.toml", "name = \"broken\"\nn = 2\n");
    write_file(dir / "edges.tsv", "0\t1\n");
    std::ofstream bin(dir / "features.bin", std::ios::binary);
    const std::uint64_t n = 2, m = 1;
    const double values[2] = {1.0, 2.0};
    bin.write(reinterpret_cast<const char*>(&n), 8);
    bin.write(reinterpret_cast<const char*>(&m), 8);
    bin.write(reinterpret_cast<const char*>(values), 16);
    return dir;
}

} // namespace

TEST_CASE("the committed toy dataset loads as expected") {
    const auto ds = load_dataset(fs::path(FREEGAD_DATA_DIR) / "toy");
    CHECK(ds.name == "toy");
    CHECK(ds.graph.num_nodes() == 2);
    CHECK(ds.graph.num_edges() == 1);
    for (double v : ds.graph.values()) CHECK(v == 0.5);
    CHECK(ds.features == FeatureMatrix(2, 2, {1.0, 0.0, 0.0, 1.0}));
    CHECK(ds.labels == std::vector<std::int8_t>{0, 1});
}

TEST_CASE("a dataset survives a save/load round trip unchanged") {
    SyntheticParams params;
    params.n = 120;
    params.m = 5;
    params.seed = 9;
    params.n_cliques = 1;
    params.clique_size = 4;
    params.n_contextual = 6;
    const auto ds = generate_synthetic(params);

    const auto dir = scratch_dir("roundtrip");
    save_dataset(ds, dir);
    const auto back = load_dataset(dir);
    CHECK(back.graph == ds.graph);
    CHECK(back.features == ds.features);
    CHECK(back.labels == ds.labels);
    CHECK(back.name == ds.name);
    CHECK(load_labels(dir) == ds.labels);
    fs::remove_all(dir);
}

TEST_CASE("scores round-trip bit-exactly") {
    ScoreVector sv;
    sv.scores = {0.1, -0.0, 1.0 / 3.0, -1e-300, 2.5e17, -7.000000000000001};
    sv.labels = {0, 1, 0, 0, 1, 1};
    const auto dir = scratch_dir("scores");
    const auto file = dir / "scores.tsv";
    save_scores(sv, file);
    const auto back = load_scores(file);
    REQUIRE(back.scores.size() == sv.scores.size());
    CHECK(std::memcmp(back.scores.data(), sv.scores.data(),
                      sv.scores.size() * sizeof(double)) == 0);
    CHECK(back.labels == sv.labels);
    CHECK(back.positive_part.empty());

    // same file without the label column
    ScoreVector bare;
    bare.scores = sv.scores;
    save_scores(bare, file);
    const auto back2 = load_scores(file);
    CHECK(back2.labels.empty());
    CHECK(std::memcmp(back2.scores.data(), sv.scores.data(),
                      sv.scores.size() * sizeof(double)) == 0);
    fs::remove_all(dir);
}

TEST_CASE("saving non-finite scores is refused") {
    ScoreVector sv;
    sv.scores = {1.0, std::nan("")};
    const auto dir = scratch_dir("nanscore");
    CHECK_THROWS_AS(save_scores(sv, dir / "scores.tsv"), InvalidParams);
    fs::remove_all(dir);
}

TEST_CASE("missing pieces raise MissingFile") {
    CHECK_THROWS_AS(load_dataset("/nonexistent/nowhere"), MissingFile);
    const auto dir = broken_base("missing_edges");
    fs::remove(dir / "edges.tsv");
    CHECK_THROWS_AS(load_dataset(dir), MissingFile);
    fs::remove_all(dir);
}

TEST_CASE("malformed content reports the offending line") {
    const auto dir = broken_base("bad_edge");
    write_file(dir / "edges.tsv", "0\t1\nnot an edge\n");
    try {
        load_dataset(dir);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }

    write_file(dir / "edges.tsv", "0\t1\n0\t7\n");
    CHECK_THROWS_AS(load_dataset(dir), ParseError);  // endpoint outside [0, n)

    write_file(dir / "edges.tsv", "0\t1\t2\n");
    CHECK_THROWS_AS(load_dataset(dir), ParseError);  // three fields

    write_file(dir / "edges.tsv", "0\t1\n");
    write_file(dir / "labels.tsv", "0\n2\n");
    CHECK_THROWS_AS(load_dataset(dir), ParseError);
    fs::remove_all(dir);
}

TEST_CASE("meta and shape disagreements raise ShapeMismatch") {
    const auto dir = broken_base("meta_mismatch");
    write_file(dir / "meta.toml", "name = \"broken\"\nn = 5\n");
    CHECK_THROWS_AS(load_dataset(dir), ShapeMismatch);

    write_file(dir / "meta.toml", "name = \"broken\"\nn = 2\n");
    write_file(dir / "labels.tsv", "0\n1\n0\n");
    CHECK_THROWS_AS(load_dataset(dir), ShapeMismatch);
    fs::remove_all(dir);
}

TEST_CASE("meta.toml requires name and n") {
    const auto dir = broken_base("meta_keys");
    write_file(dir / "meta.toml", "n = 2\n");
    CHECK_THROWS_AS(load_dataset(dir), ParseError);
    write_file(dir / "meta.toml", "name = \"broken\"\n");
    CHECK_THROWS_AS(load_dataset(dir), ParseError);
    write_file(dir / "meta.toml", "name = \"broken\" n = 2\n");
    CHECK_THROWS_AS(load_dataset(dir), ParseError);
    fs::remove_all(dir);
}

TEST_CASE("truncated or oversized binary features are rejected") {
    const auto dir = broken_base("bad_bin");
    {
        std::ofstream bin(dir / "features.bin", std::ios::binary | std::ios::trunc);
        const std::uint64_t n = 2, m = 1;
        const double one = 1.0;
        bin.write(reinterpret_cast<const char*>(&n), 8);
        bin.write(reinterpret_cast<const char*>(&m), 8);
        bin.write(reinterpret_cast<const char*>(&one), 8);  // one double short
    }
    CHECK_THROWS_AS(load_dataset(dir), ParseError);
    {
        std::ofstream bin(dir / "features.bin", std::ios::binary | std::ios::trunc);
        const std::uint64_t n = 2, m = 1;
        const double bad[2] = {1.0, std::nan("")};
        bin.write(reinterpret_cast<const char*>(&n), 8);
        bin.write(reinterpret_cast<const char*>(&m), 8);
        bin.write(reinterpret_cast<const char*>(bad), 16);
    }
    CHECK_THROWS_AS(load_dataset(dir), ParseError);  // non-finite feature
    fs::remove_all(dir);
}

TEST_CASE("non-finite scores in a file are rejected") {
    const auto dir = scratch_dir("nan_file");
    write_file(dir / "scores.tsv", "node_id\tscore\n0\tnan\n");
    CHECK_THROWS_AS(load_scores(dir / "scores.tsv"), ParseError);
    write_file(dir / "scores.tsv", "node_id\tscore\n1\t0.5\n");
    CHECK_THROWS_AS(load_scores(dir / "scores.tsv"), ParseError);  // ids must be sequential
    fs::remove_all(dir);
}

TEST_CASE("preprocessing is off by default and works when requested") {
    SyntheticParams params;
    params.n = 80;
    params.m = 4;
    params.seed = 3;
    params.n_cliques = 0;
    params.clique_size = 5;
    params.n_contextual = 0;
    const auto ds = generate_synthetic(params);
    const auto dir = scratch_dir("preproc");
    save_dataset(ds, dir);

    const auto plain = load_dataset(dir);
    CHECK(plain.features == ds.features);

    LoadOptions std_opts;
    std_opts.standardize = true;
    const auto standardized = load_dataset(dir, std_opts);
    for (std::size_t j = 0; j < 4; ++j) {
        double mean = 0.0, var = 0.0;
        for (std::size_t i = 0; i < 80; ++i) mean += standardized.features.at(i, j);
        mean /= 80.0;
        for (std::size_t i = 0; i < 80; ++i) {
            const double d = standardized.features.at(i, j) - mean;
            var += d * d;
        }
        var /= 80.0;
        CHECK(std::abs(mean) <= 1e-9);
        CHECK(std::abs(var - 1.0) <= 1e-9);
    }

    LoadOptions row_opts;
    row_opts.row_normalize = true;
    const auto normalized = load_dataset(dir, row_opts);
    for (std::size_t i = 0; i < 80; ++i) {
        double sq = 0.0;
        for (std::size_t j = 0; j < 4; ++j) {
            sq += normalized.features.at(i, j) * normalized.features.at(i, j);
        }
        CHECK(std::abs(std::sqrt(sq) - 1.0) <= 1e-12);
    }
    fs::remove_all(dir);
}

#include "freegad/dataset.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "freegad/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary feature files assume a little-endian host");

namespace freegad {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::ifstream open_text(const std::filesystem::path& file) {
    if (!std::filesystem::exists(file)) {
        throw MissingFile("missing file: " + file.string());
    }
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file.string());
    return in;
}

// meta.toml: `key = value` lines, '#' comments, string values quoted.
struct Meta {
    std::string name;
    std::size_t n = 0;
};

Meta parse_meta(const std::filesystem::path& file) {
    std::ifstream in = open_text(file);
    Meta meta;
    bool have_name = false, have_n = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw ParseError(file.string(), lineno, "expected key = value");
        }
        const std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key == "name") {
            if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
                value = value.substr(1, value.size() - 2);
            }
            if (value.empty()) throw ParseError(file.string(), lineno, "name must be non-empty");
            meta.name = value;
            have_name = true;
        } else if (key == "n") {
            char* end = nullptr;
            const unsigned long long parsed = std::strtoull(value.c_str(), &end, 10);
            if (end == value.c_str() || *end != '\0' || value[0] == '-') {
                throw ParseError(file.string(), lineno, "n must be a non-negative integer");
            }
            meta.n = static_cast<std::size_t>(parsed);
            have_n = true;
        }
        // unknown keys are ignored
    }
    if (!have_name) throw ParseError(file.string(), lineno, "required key `name` not found");
    if (!have_n) throw ParseError(file.string(), lineno, "required key `n` not found");
    return meta;
}

FeatureMatrix load_features(const std::filesystem::path& file) {
    if (!std::filesystem::exists(file)) throw MissingFile("missing file: " + file.string());
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open " + file.string());

    std::uint64_t n = 0, m = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    in.read(reinterpret_cast<char*>(&m), sizeof(m));
    if (!in) throw ParseError(file.string() + ": header truncated (expected two u64 fields)");

    const std::uintmax_t expected = 16 + static_cast<std::uintmax_t>(n) * m * sizeof(double);
    const std::uintmax_t actual = std::filesystem::file_size(file);
    if (actual != expected) {
        throw ParseError(file.string() + ": file holds " + std::to_string(actual) +
                         " bytes, header implies " + std::to_string(expected));
    }
    std::vector<double> values(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!in) throw IoError("short read on " + file.string());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw ParseError(file.string() + ": non-finite value at row " +
                             std::to_string(i / m) + " col " + std::to_string(i % m));
        }
    }
    return FeatureMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(m),
                         std::move(values));
}

EdgeList parse_edges(const std::filesystem::path& file, std::size_t n) {
    std::ifstream in = open_text(file);
    EdgeList edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const char* p = t.c_str();
        char* end = nullptr;
        const long long a = std::strtoll(p, &end, 10);
        if (end == p) throw ParseError(file.string(), lineno, "expected two node ids");
        p = end;
        const long long b = std::strtoll(p, &end, 10);
        if (end == p || trim(end).size() != 0) {
            throw ParseError(file.string(), lineno, "expected exactly two node ids");
        }
        if (a < 0 || b < 0 || a >= static_cast<long long>(n) || b >= static_cast<long long>(n)) {
            throw ParseError(file.string(), lineno,
                             "node id outside [0, " + std::to_string(n) + ")");
        }
        edges.emplace_back(a, b);
    }
    return edges;
}

std::vector<std::int8_t> parse_labels(const std::filesystem::path& file) {
    std::ifstream in = open_text(file);
    std::vector<std::int8_t> labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t == "0") {
            labels.push_back(0);
        } else if (t == "1") {
            labels.push_back(1);
        } else {
            throw ParseError(file.string(), lineno, "label must be 0 or 1, got '" + t + "'");
        }
    }
    return labels;
}

void standardize_columns(FeatureMatrix& x) {
    const std::size_t n = x.rows(), m = x.cols();
    if (n == 0) return;
    for (std::size_t j = 0; j < m; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += x.at(i, j);
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = x.at(i, j) - mean;
            var += d * d;
        }
        var /= static_cast<double>(n);
        const double sd = std::sqrt(var);
        if (sd > 0.0) {
            for (std::size_t i = 0; i < n; ++i) x.at(i, j) = (x.at(i, j) - mean) / sd;
        } else {
            for (std::size_t i = 0; i < n; ++i) x.at(i, j) = 0.0;  // constant column
        }
    }
}

void normalize_rows(FeatureMatrix& x) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double sq = 0.0;
        for (std::size_t j = 0; j < x.cols(); ++j) sq += x.at(i, j) * x.at(i, j);
        const double norm = std::sqrt(sq);
        if (norm > 0.0) {
            for (std::size_t j = 0; j < x.cols(); ++j) x.at(i, j) /= norm;
        }
    }
}

} // namespace

Dataset load_dataset(const std::filesystem::path& dir, const LoadOptions& opts) {
    if (!std::filesystem::is_directory(dir)) {
        throw MissingFile("dataset directory not found: " + dir.string());
    }
    const Meta meta = parse_meta(dir / "meta.toml");
    Dataset ds;
    ds.name = meta.name;
    ds.features = load_features(dir / "features.bin");
    if (ds.features.rows() != meta.n) {
        throw ShapeMismatch("meta.toml declares n = " + std::to_string(meta.n) +
                            " but features.bin holds " + std::to_string(ds.features.rows()) +
                            " rows");
    }
    const EdgeList edges = parse_edges(dir / "edges.tsv", meta.n);
    ds.graph = SparseGraph::build_normalized(edges, meta.n);
    if (std::filesystem::exists(dir / "labels.tsv")) {
        ds.labels = parse_labels(dir / "labels.tsv");
        if (ds.labels.size() != meta.n) {
            throw ShapeMismatch("labels.tsv holds " + std::to_string(ds.labels.size()) +
                                " labels for " + std::to_string(meta.n) + " nodes");
        }
    }
    if (opts.standardize) standardize_columns(ds.features);
    if (opts.row_normalize) normalize_rows(ds.features);
    return ds;
}

std::vector<std::int8_t> load_labels(const std::filesystem::path& dir) {
    return parse_labels(dir / "labels.tsv");
}

void save_dataset(const Dataset& ds, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());

    {
        std::ofstream out(dir / "meta.toml");
        if (!out) throw IoError("cannot write " + (dir / "meta.toml").string());
        out << "name = \"" << ds.name << "\"\n";
        out << "n = " << ds.graph.num_nodes() << "\n";
        if (!out) throw IoError("write failure on " + (dir / "meta.toml").string());
    }
    {
        std::ofstream out(dir / "features.bin", std::ios::binary);
        if (!out) throw IoError("cannot write " + (dir / "features.bin").string());
        const std::uint64_t n = ds.features.rows(), m = ds.features.cols();
        out.write(reinterpret_cast<const char*>(&n), sizeof(n));
        out.write(reinterpret_cast<const char*>(&m), sizeof(m));
        out.write(reinterpret_cast<const char*>(ds.features.data().data()),
                  static_cast<std::streamsize>(ds.features.data().size() * sizeof(double)));
        if (!out) throw IoError("write failure on " + (dir / "features.bin").string());
    }
    {
        std::ofstream out(dir / "edges.tsv");
        if (!out) throw IoError("cannot write " + (dir / "edges.tsv").string());
        for (std::size_t i = 0; i < ds.graph.num_nodes(); ++i) {
            for (NodeId j : ds.graph.neighbors(i)) {
                if (j > i) out << i << '\t' << j << '\n';
            }
        }
        if (!out) throw IoError("write failure on " + (dir / "edges.tsv").string());
    }
    if (!ds.labels.empty()) {
        std::ofstream out(dir / "labels.tsv");
        if (!out) throw IoError("cannot write " + (dir / "labels.tsv").string());
        for (std::int8_t l : ds.labels) out << int(l) << '\n';
        if (!out) throw IoError("write failure on " + (dir / "labels.tsv").string());
    }
}

void save_scores(const ScoreVector& sv, const std::filesystem::path& file) {
    const bool with_labels = !sv.labels.empty();
    if (with_labels && sv.labels.size() != sv.scores.size()) {
        throw ShapeMismatch("labels and scores differ in length");
    }
    for (double s : sv.scores) {
        if (!std::isfinite(s)) throw InvalidParams("scores must be finite to be saved");
    }
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file.string());
    out << "node_id\tscore" << (with_labels ? "\tlabel" : "") << "\n";
    char buf[64];
    for (std::size_t i = 0; i < sv.scores.size(); ++i) {
        // %.17g round-trips every finite double exactly.
        std::snprintf(buf, sizeof(buf), "%.17g", sv.scores[i]);
        out << i << '\t' << buf;
        if (with_labels) out << '\t' << int(sv.labels[i]);
        out << '\n';
    }
    if (!out) throw IoError("write failure on " + file.string());
}

ScoreVector load_scores(const std::filesystem::path& file) {
    std::ifstream in = open_text(file);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(file.string(), 1, "missing header");
    const std::string header = trim(line);
    bool with_labels = false;
    if (header == "node_id\tscore\tlabel") {
        with_labels = true;
    } else if (header != "node_id\tscore") {
        throw ParseError(file.string(), 1, "unrecognized header '" + header + "'");
    }

    ScoreVector sv;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        const char* p = t.c_str();
        char* end = nullptr;
        const long long id = std::strtoll(p, &end, 10);
        if (end == p || id < 0 || static_cast<std::size_t>(id) != sv.scores.size()) {
            throw ParseError(file.string(), lineno,
                             "expected node id " + std::to_string(sv.scores.size()));
        }
        p = end;
        const double score = std::strtod(p, &end);
        if (end == p) throw ParseError(file.string(), lineno, "expected a score value");
        if (!std::isfinite(score)) {
            throw ParseError(file.string(), lineno, "score must be finite");
        }
        sv.scores.push_back(score);
        p = end;
        if (with_labels) {
            const long long label = std::strtoll(p, &end, 10);
            if (end == p || (label != 0 && label != 1)) {
                throw ParseError(file.string(), lineno, "label must be 0 or 1");
            }
            sv.labels.push_back(static_cast<std::int8_t>(label));
            p = end;
        }
        if (trim(p).size() != 0) throw ParseError(file.string(), lineno, "trailing characters");
    }
    return sv;
}

} // namespace freegad

// Python bindings for the core operations. Matrices cross the boundary as
// C-contiguous float64 numpy arrays (copied, never aliased), edge lists as
// (E, 2) integer arrays, labels as int8 vectors. Heavy calls release the GIL
// while the C++ side runs.

#include <algorithm>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "freegad/anchors.hpp"
#include "freegad/dataset.hpp"
#include "freegad/encoder.hpp"
#include "freegad/errors.hpp"
#include "freegad/graph.hpp"
#include "freegad/metrics.hpp"
#include "freegad/pipeline.hpp"
#include "freegad/runtime.hpp"
#include "freegad/scoring.hpp"
#include "freegad/synthetic.hpp"

namespace py = pybind11;
using namespace freegad;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using IndexArray = py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>;
using LabelArray = py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>;

FeatureMatrix to_matrix(const DoubleArray& arr) {
    if (arr.ndim() != 2) throw py::value_error("expected a 2-D float array");
    FeatureMatrix x(static_cast<std::size_t>(arr.shape(0)),
                    static_cast<std::size_t>(arr.shape(1)));
    std::memcpy(x.data().data(), arr.data(),
                sizeof(double) * static_cast<std::size_t>(arr.size()));
    return x;
}

py::array_t<double> to_array(const FeatureMatrix& x) {
    py::array_t<double> out({static_cast<py::ssize_t>(x.rows()),
                             static_cast<py::ssize_t>(x.cols())});
    std::memcpy(out.mutable_data(), x.data().data(), sizeof(double) * x.data().size());
    return out;
}

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::memcpy(out.mutable_data(), v.data(), sizeof(double) * v.size());
    return out;
}

py::array_t<std::int8_t> to_array(const std::vector<std::int8_t>& v) {
    py::array_t<std::int8_t> out(static_cast<py::ssize_t>(v.size()));
    std::memcpy(out.mutable_data(), v.data(), sizeof(std::int8_t) * v.size());
    return out;
}

py::array_t<NodeId> to_array(const std::vector<NodeId>& v) {
    py::array_t<NodeId> out(static_cast<py::ssize_t>(v.size()));
    std::memcpy(out.mutable_data(), v.data(), sizeof(NodeId) * v.size());
    return out;
}

EdgeList to_edges(const IndexArray& arr) {
    if (arr.size() == 0) return {};
    if (arr.ndim() != 2 || arr.shape(1) != 2) {
        throw py::value_error("expected an (E, 2) integer edge array");
    }
    const auto view = arr.unchecked<2>();
    EdgeList edges(static_cast<std::size_t>(arr.shape(0)));
    for (py::ssize_t i = 0; i < arr.shape(0); ++i) {
        edges[static_cast<std::size_t>(i)] = {view(i, 0), view(i, 1)};
    }
    return edges;
}

std::vector<std::int8_t> to_labels(const py::object& labels) {
    if (labels.is_none()) return {};
    const LabelArray arr = labels.cast<LabelArray>();
    if (arr.ndim() != 1) throw py::value_error("expected a 1-D label array");
    return {arr.data(), arr.data() + arr.size()};
}

std::vector<double> to_vector(const DoubleArray& arr) {
    if (arr.ndim() != 1) throw py::value_error("expected a 1-D float array");
    return {arr.data(), arr.data() + arr.size()};
}

std::vector<NodeId> to_node_ids(const IndexArray& arr, const char* what) {
    if (arr.ndim() != 1) throw py::value_error(std::string("expected a 1-D array of ") + what);
    std::vector<NodeId> ids;
    ids.reserve(static_cast<std::size_t>(arr.size()));
    const auto view = arr.unchecked<1>();
    for (py::ssize_t i = 0; i < arr.size(); ++i) {
        if (view(i) < 0) throw py::value_error(std::string(what) + " must be non-negative");
        ids.push_back(static_cast<NodeId>(view(i)));
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

py::dict times_dict(const StageTimes& t) {
    py::dict d;
    d["encode"] = t.encode;
    d["anchors"] = t.anchors;
    d["scoring"] = t.scoring;
    d["total"] = t.total();
    return d;
}

py::dict trial_dict(const GridTrial& t) {
    py::dict d;
    d["layers"] = t.layers;
    d["anchors"] = t.anchor_count;
    d["alpha"] = t.alpha;
    d["beta"] = t.beta;
    d["auroc"] = t.auroc_value;
    d["auprc"] = t.auprc_value;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Training-free graph anomaly detection: propagation-only encoding, "
                "anchor selection, and distance-based scoring.";
    mod.attr("__version__") = FREEGAD_VERSION;

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const MissingFile& e) {
            PyErr_SetString(PyExc_FileNotFoundError, e.what());
        } catch (const IoError& e) {
            PyErr_SetString(PyExc_OSError, e.what());
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<SparseGraph>(mod, "SparseGraph",
                            "Symmetrically normalized adjacency with self-loops (CSR).")
        .def_property_readonly("num_nodes", &SparseGraph::num_nodes)
        .def_property_readonly("num_edges", &SparseGraph::num_edges,
                               "Undirected edge count, self-loops excluded.")
        .def_property_readonly("nnz", &SparseGraph::nnz)
        .def("row_offsets",
             [](const SparseGraph& g) {
                 py::array_t<std::size_t> out(static_cast<py::ssize_t>(g.row_offsets().size()));
                 std::memcpy(out.mutable_data(), g.row_offsets().data(),
                             sizeof(std::size_t) * g.row_offsets().size());
                 return out;
             })
        .def("col_indices", [](const SparseGraph& g) { return to_array(g.col_indices()); })
        .def("values", [](const SparseGraph& g) { return to_array(g.values()); })
        .def(py::self == py::self)
        .def("__repr__", [](const SparseGraph& g) {
            return "SparseGraph(num_nodes=" + std::to_string(g.num_nodes()) +
                   ", num_edges=" + std::to_string(g.num_edges()) + ")";
        });

    py::class_<Dataset>(mod, "Dataset", "A graph, its node features, and optional 0/1 labels.")
        .def_property_readonly("graph",
                               [](const Dataset& d) -> const SparseGraph& { return d.graph; },
                               py::return_value_policy::reference_internal)
        .def_property_readonly("features", [](const Dataset& d) { return to_array(d.features); })
        .def_property_readonly("labels", [](const Dataset& d) { return to_array(d.labels); })
        .def_property(
            "name", [](const Dataset& d) { return d.name; },
            [](Dataset& d, std::string v) { d.name = std::move(v); })
        .def("save", [](const Dataset& d, const std::filesystem::path& dir) { save_dataset(d, dir); },
             py::arg("dir"), "Write the dataset directory format.")
        .def("__repr__", [](const Dataset& d) {
            return "Dataset(name='" + d.name + "', num_nodes=" + std::to_string(d.graph.num_nodes()) +
                   ", dim=" + std::to_string(d.features.cols()) + ")";
        });

    mod.def(
        "build_graph",
        [](const IndexArray& edges, std::size_t n) {
            const EdgeList e = to_edges(edges);
            py::gil_scoped_release release;
            return SparseGraph::build_normalized(e, n);
        },
        py::arg("edges"), py::arg("n"),
        "Build the normalized adjacency from an (E, 2) array of undirected edges.");

    mod.def(
        "spmv",
        [](const SparseGraph& g, const DoubleArray& x, int threads) {
            const FeatureMatrix xm = to_matrix(x);
            FeatureMatrix y;
            {
                py::gil_scoped_release release;
                y = spmv(g, xm, resolve_threads(threads));
            }
            return to_array(y);
        },
        py::arg("graph"), py::arg("x"), py::arg("threads") = 1,
        "Multiply the normalized adjacency with a feature matrix.");

    mod.def(
        "propagate",
        [](const SparseGraph& g, const DoubleArray& x, int layers, int threads) {
            const FeatureMatrix xm = to_matrix(x);
            std::vector<FeatureMatrix> reps;
            {
                py::gil_scoped_release release;
                reps = propagate(g, xm, layers, resolve_threads(threads));
            }
            py::list out;
            for (const FeatureMatrix& r : reps) out.append(to_array(r));
            return out;
        },
        py::arg("graph"), py::arg("x"), py::arg("layers"), py::arg("threads") = 1,
        "Return [x0, x1, ..., xL] where each step multiplies by the normalized adjacency.");

    mod.def(
        "encode",
        [](const SparseGraph& g, const DoubleArray& x, int layers, double sigma,
           const std::string& sim_mode, int threads) {
            const FeatureMatrix xm = to_matrix(x);
            EncoderConfig cfg;
            cfg.layers = layers;
            cfg.sigma = sigma;
            cfg.sim_mode = parse_sim_mode(sim_mode);
            cfg.threads = resolve_threads(threads);
            Representations reps;
            {
                py::gil_scoped_release release;
                reps = encode(g, xm, cfg);
            }
            return to_array(reps.mixed);
        },
        py::arg("graph"), py::arg("x"), py::arg("layers") = 8, py::arg("sigma") = 1e-8,
        py::arg("sim_mode") = "paper", py::arg("threads") = 1,
        "Propagation-only encoding: the mean of the affinity-gated residual layers.");

    mod.def(
        "node_affinity",
        [](const DoubleArray& raw, const DoubleArray& mixed, double sigma,
           const std::string& sim_mode, int threads) {
            const FeatureMatrix r = to_matrix(raw);
            const FeatureMatrix m = to_matrix(mixed);
            std::vector<double> aff;
            {
                py::gil_scoped_release release;
                aff = node_affinity(r, m, sigma, parse_sim_mode(sim_mode),
                                    resolve_threads(threads));
            }
            return to_array(aff);
        },
        py::arg("raw"), py::arg("mixed"), py::arg("sigma") = 1e-8, py::arg("sim_mode") = "paper",
        py::arg("threads") = 1,
        "Per-node similarity between raw features and the mixed representation.");

    mod.def(
        "select_anchors",
        [](const DoubleArray& affinity, std::size_t k) {
            const AnchorSet set = select_anchors(to_vector(affinity), k);
            return py::make_tuple(to_array(set.positive), to_array(set.negative));
        },
        py::arg("affinity"), py::arg("k"),
        "Top-k and bottom-k node ids by affinity, each sorted ascending.");

    mod.def(
        "anchor_distances",
        [](const DoubleArray& mixed, const IndexArray& anchors, int threads) {
            const FeatureMatrix m = to_matrix(mixed);
            const std::vector<NodeId> ids = to_node_ids(anchors, "anchor ids");
            FeatureMatrix d;
            {
                py::gil_scoped_release release;
                d = anchor_distances(m, ids, resolve_threads(threads));
            }
            return to_array(d);
        },
        py::arg("mixed"), py::arg("anchors"), py::arg("threads") = 1,
        "Euclidean distances from every row to the given anchor rows.");

    mod.def(
        "final_scores",
        [](const DoubleArray& mixed, const IndexArray& positive, const IndexArray& negative,
           double alpha, double beta, const std::string& stat_mode, int threads) {
            const FeatureMatrix m = to_matrix(mixed);
            AnchorSet anchors;
            anchors.positive = to_node_ids(positive, "positive anchors");
            anchors.negative = to_node_ids(negative, "negative anchors");
            ScoringConfig cfg;
            cfg.alpha = alpha;
            cfg.beta = beta;
            cfg.stat_mode = parse_stat_mode(stat_mode);
            cfg.threads = resolve_threads(threads);
            ScoreVector sv;
            {
                py::gil_scoped_release release;
                sv = final_scores(m, anchors, cfg);
            }
            py::dict out;
            out["scores"] = to_array(sv.scores);
            out["positive_part"] = to_array(sv.positive_part);
            out["negative_part"] = to_array(sv.negative_part);
            return out;
        },
        py::arg("mixed"), py::arg("positive"), py::arg("negative"), py::arg("alpha") = 0.5,
        py::arg("beta") = 0.5, py::arg("stat_mode") = "sum", py::arg("threads") = 1,
        "alpha * stat(distances to positive anchors) - beta * stat(distances to negative).");

    mod.def(
        "run_pipeline",
        [](const SparseGraph& g, const DoubleArray& x, int layers, std::size_t anchors,
           double alpha, double beta, double sigma, const std::string& sim_mode,
           const std::string& stat_mode, int threads) {
            const FeatureMatrix xm = to_matrix(x);
            PipelineConfig cfg;
            cfg.layers = layers;
            cfg.anchor_count = anchors;
            cfg.alpha = alpha;
            cfg.beta = beta;
            cfg.sigma = sigma;
            cfg.sim_mode = parse_sim_mode(sim_mode);
            cfg.stat_mode = parse_stat_mode(stat_mode);
            cfg.threads = resolve_threads(threads);
            PipelineResult res;
            {
                py::gil_scoped_release release;
                res = run_pipeline(g, xm, cfg);
            }
            py::dict out;
            out["scores"] = to_array(res.scores.scores);
            out["positive_part"] = to_array(res.scores.positive_part);
            out["negative_part"] = to_array(res.scores.negative_part);
            out["positive_anchors"] = to_array(res.anchors.positive);
            out["negative_anchors"] = to_array(res.anchors.negative);
            out["affinity"] = to_array(res.anchors.affinity);
            out["times"] = times_dict(res.times);
            return out;
        },
        py::arg("graph"), py::arg("x"), py::arg("layers") = 8, py::arg("anchors") = 20,
        py::arg("alpha") = 0.5, py::arg("beta") = 0.5, py::arg("sigma") = 1e-8,
        py::arg("sim_mode") = "paper", py::arg("stat_mode") = "sum", py::arg("threads") = 1,
        "Encode, select anchors, and score every node. Deterministic for any thread count.");

    mod.def(
        "grid_search",
        [](const SparseGraph& g, const DoubleArray& x, const py::object& labels,
           std::vector<int> layer_values, std::vector<std::size_t> anchor_values,
           std::vector<double> alpha_values, std::vector<double> beta_values,
           std::size_t random_trials, std::uint64_t seed, double sigma,
           const std::string& sim_mode, const std::string& stat_mode, int threads) {
            const FeatureMatrix xm = to_matrix(x);
            const std::vector<std::int8_t> y = to_labels(labels);
            GridSpec spec;
            spec.layer_values = std::move(layer_values);
            spec.anchor_values = std::move(anchor_values);
            spec.alpha_values = std::move(alpha_values);
            spec.beta_values = std::move(beta_values);
            spec.random_trials = random_trials;
            spec.seed = seed;
            spec.sigma = sigma;
            spec.sim_mode = parse_sim_mode(sim_mode);
            spec.stat_mode = parse_stat_mode(stat_mode);
            spec.threads = resolve_threads(threads);
            GridResult res;
            {
                py::gil_scoped_release release;
                res = grid_search(g, xm, y, spec);
            }
            py::list trials;
            for (const GridTrial& t : res.trials) trials.append(trial_dict(t));
            py::dict out;
            out["trials"] = trials;
            out["best"] = trial_dict(res.best);
            return out;
        },
        py::arg("graph"), py::arg("x"), py::arg("labels"), py::arg("layer_values"),
        py::arg("anchor_values"), py::arg("alpha_values"), py::arg("beta_values"),
        py::arg("random_trials") = 0, py::arg("seed") = 0, py::arg("sigma") = 1e-8,
        py::arg("sim_mode") = "paper", py::arg("stat_mode") = "sum", py::arg("threads") = 1,
        "Evaluate the cross product of the value lists (plus optional random draws) "
        "against labels; returns every trial and the best by AUROC.");

    mod.def(
        "auroc",
        [](const DoubleArray& scores, const py::object& labels) {
            LabeledScores ls;
            ls.scores = to_vector(scores);
            ls.labels = to_labels(labels);
            return auroc(ls);
        },
        py::arg("scores"), py::arg("labels"),
        "Area under the ROC curve; tied scores contribute half.");

    mod.def(
        "auprc",
        [](const DoubleArray& scores, const py::object& labels) {
            LabeledScores ls;
            ls.scores = to_vector(scores);
            ls.labels = to_labels(labels);
            return auprc(ls);
        },
        py::arg("scores"), py::arg("labels"),
        "Area under the precision-recall curve (average precision).");

    mod.def(
        "generate_synthetic",
        [](std::size_t n, std::size_t m, std::uint64_t seed, std::size_t cliques,
           std::size_t clique_size, std::size_t contextual) {
            SyntheticParams params;
            params.n = n;
            params.m = m;
            params.seed = seed;
            params.n_cliques = cliques;
            params.clique_size = clique_size;
            params.n_contextual = contextual;
            py::gil_scoped_release release;
            return generate_synthetic(params);
        },
        py::arg("n") = 1000, py::arg("m") = 16, py::arg("seed") = 1, py::arg("cliques") = 3,
        py::arg("clique_size") = 5, py::arg("contextual") = 15,
        "Seeded community graph with injected structural and contextual anomalies.");

    mod.def(
        "load_dataset",
        [](const std::filesystem::path& dir, bool standardize, bool row_normalize) {
            LoadOptions opts;
            opts.standardize = standardize;
            opts.row_normalize = row_normalize;
            py::gil_scoped_release release;
            return load_dataset(dir, opts);
        },
        py::arg("dir"), py::arg("standardize") = false, py::arg("row_normalize") = false,
        "Read a dataset directory (edges.tsv, features.bin, optional labels.tsv, meta.toml).");

    mod.def(
        "make_dataset",
        [](const IndexArray& edges, std::size_t n, const DoubleArray& features,
           const py::object& labels, const std::string& name) {
            Dataset ds;
            ds.features = to_matrix(features);
            ds.labels = to_labels(labels);
            ds.name = name;
            if (ds.features.rows() != n) {
                throw ShapeMismatch("features have " + std::to_string(ds.features.rows()) +
                                    " rows for " + std::to_string(n) + " nodes");
            }
            if (!ds.labels.empty() && ds.labels.size() != n) {
                throw ShapeMismatch("labels have " + std::to_string(ds.labels.size()) +
                                    " entries for " + std::to_string(n) + " nodes");
            }
            const EdgeList e = to_edges(edges);
            py::gil_scoped_release release;
            ds.graph = SparseGraph::build_normalized(e, n);
            return ds;
        },
        py::arg("edges"), py::arg("n"), py::arg("features"), py::arg("labels") = py::none(),
        py::arg("name") = std::string("dataset"),
        "Assemble a Dataset from raw arrays; the graph is built and normalized.");

    mod.def(
        "save_scores",
        [](const std::filesystem::path& file, const DoubleArray& scores,
           const py::object& labels) {
            ScoreVector sv;
            sv.scores = to_vector(scores);
            sv.labels = to_labels(labels);
            if (!sv.labels.empty() && sv.labels.size() != sv.scores.size()) {
                throw ShapeMismatch("labels and scores disagree in length");
            }
            save_scores(sv, file);
        },
        py::arg("file"), py::arg("scores"), py::arg("labels") = py::none(),
        "Write a scores file; reading it back reproduces every double bit-exactly.");

    mod.def(
        "load_scores",
        [](const std::filesystem::path& file) {
            const ScoreVector sv = load_scores(file);
            py::object labels = sv.labels.empty() ? py::object(py::none())
                                                  : py::object(to_array(sv.labels));
            return py::make_tuple(to_array(sv.scores), labels);
        },
        py::arg("file"), "Read a scores file; returns (scores, labels or None).");
}

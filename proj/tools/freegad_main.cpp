// Command-line front end: score a dataset, evaluate scores, search
// hyperparameters, generate synthetic benchmarks, and measure scaling.
//
// Exit codes: 0 success, 2 usage error, 3 data error (missing or malformed
// input), 4 configuration error (values outside their documented ranges).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "freegad/dataset.hpp"
#include "freegad/errors.hpp"
#include "freegad/metrics.hpp"
#include "freegad/pipeline.hpp"
#include "freegad/runtime.hpp"
#include "freegad/synthetic.hpp"

using namespace freegad;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitConfig = 4;

int exit_code_for(const Error& e) {
    if (dynamic_cast<const InvalidParams*>(&e) || dynamic_cast<const KTooLarge*>(&e) ||
        dynamic_cast<const KZero*>(&e) || dynamic_cast<const EmptyDistanceSet*>(&e)) {
        return kExitConfig;
    }
    return kExitData;  // parse/missing/io/shape/index/degenerate-label problems
}

struct ScoreOpts {
    std::string dataset;
    std::string out;
    int layers = 8;
    std::size_t anchors = 20;
    double alpha = 0.5;
    double beta = 0.5;
    double sigma = 1e-8;
    std::string sim_mode = "paper";
    std::string stat_mode = "sum";
    int threads = 0;
    bool standardize = false;
    bool row_normalize = false;
};

int run_score(const ScoreOpts& o) {
    WallTimer total;
    std::string stage = "config";
    try {
        PipelineConfig cfg;
        cfg.layers = o.layers;
        cfg.anchor_count = o.anchors;
        cfg.alpha = o.alpha;
        cfg.beta = o.beta;
        cfg.sigma = o.sigma;
        cfg.sim_mode = parse_sim_mode(o.sim_mode);
        cfg.stat_mode = parse_stat_mode(o.stat_mode);
        cfg.threads = resolve_threads(o.threads);
        cfg.validate();

        stage = "load";
        WallTimer timer;
        LoadOptions lo;
        lo.standardize = o.standardize;
        lo.row_normalize = o.row_normalize;
        const Dataset ds = load_dataset(o.dataset, lo);
        const double t_load = timer.elapsed_s();

        stage = "pipeline";
        PipelineResult res = run_pipeline(ds.graph, ds.features, cfg);

        stage = "write";
        timer.restart();
        res.scores.labels = ds.labels;
        save_scores(res.scores, o.out);
        const double t_write = timer.elapsed_s();

        std::printf("dataset %s nodes=%zu edges=%zu dim=%zu\n", ds.name.c_str(),
                    ds.graph.num_nodes(), ds.graph.num_edges(), ds.features.cols());
        std::printf("stage load     %10.4f s\n", t_load);
        std::printf("stage encode   %10.4f s\n", res.times.encode);
        std::printf("stage anchors  %10.4f s\n", res.times.anchors);
        std::printf("stage scoring  %10.4f s\n", res.times.scoring);
        std::printf("stage write    %10.4f s\n", t_write);
        std::printf("total          %10.4f s\n", total.elapsed_s());
        std::printf("peak_rss_mb    %10.1f\n", peak_rss_mb());
        return 0;
    } catch (const Error& e) {
        std::fprintf(stderr, "error [stage=%s]: %s\n", stage.c_str(), e.what());
        return exit_code_for(e);
    }
}

struct EvalOpts {
    std::string scores;
    std::string dataset;
};

int run_eval(const EvalOpts& o) {
    const ScoreVector sv = load_scores(o.scores);
    LabeledScores ls;
    ls.scores = sv.scores;
    if (!sv.labels.empty()) {
        ls.labels = sv.labels;
    } else if (!o.dataset.empty()) {
        ls.labels = load_labels(o.dataset);
    } else {
        throw MissingFile("scores file has no label column; pass --dataset to supply labels");
    }
    std::printf("AUROC %.2f\n", 100.0 * auroc(ls));
    std::printf("AUPRC %.2f\n", 100.0 * auprc(ls));
    return 0;
}

struct GridOpts {
    std::string dataset;
    std::string out;
    std::vector<int> layer_values;
    std::vector<std::size_t> anchor_values;
    std::vector<double> alpha_values;
    std::vector<double> beta_values;
    std::size_t random_trials = 0;
    std::uint64_t seed = 0;
    double sigma = 1e-8;
    std::string sim_mode = "paper";
    std::string stat_mode = "sum";
    int threads = 0;
    bool standardize = false;
    bool row_normalize = false;
};

int run_grid(const GridOpts& o) {
    LoadOptions lo;
    lo.standardize = o.standardize;
    lo.row_normalize = o.row_normalize;
    const Dataset ds = load_dataset(o.dataset, lo);
    if (ds.labels.empty()) {
        throw MissingFile("dataset " + o.dataset + " has no labels.tsv; a search needs labels");
    }
    const std::size_t n = ds.graph.num_nodes();

    GridSpec spec;
    spec.layer_values = o.layer_values;
    spec.anchor_values = o.anchor_values;
    spec.alpha_values = o.alpha_values;
    spec.beta_values = o.beta_values;
    // Unset lists fall back to the documented search ranges, anchor counts
    // capped by the 2K <= n requirement.
    if (spec.layer_values.empty()) spec.layer_values = {1, 2, 4, 8, 12, 16, 20};
    if (spec.anchor_values.empty()) {
        for (std::size_t k : {10, 20, 50, 100}) {
            if (2 * k <= n) spec.anchor_values.push_back(k);
        }
        if (spec.anchor_values.empty()) {
            throw InvalidParams("dataset has " + std::to_string(n) +
                                " nodes; the smallest anchor count 10 needs at least 20");
        }
    }
    if (spec.alpha_values.empty()) spec.alpha_values = {0.0, 0.25, 0.5, 0.75, 1.0};
    if (spec.beta_values.empty()) spec.beta_values = {0.0, 0.25, 0.5, 0.75, 1.0};
    spec.random_trials = o.random_trials;
    spec.seed = o.seed;
    spec.sigma = o.sigma;
    spec.sim_mode = parse_sim_mode(o.sim_mode);
    spec.stat_mode = parse_stat_mode(o.stat_mode);
    spec.threads = resolve_threads(o.threads);

    const GridResult result = grid_search(ds.graph, ds.features, ds.labels, spec);
    for (const GridTrial& t : result.trials) {
        std::printf("L=%d K=%zu alpha=%.4g beta=%.4g auroc=%.2f auprc=%.2f\n", t.layers,
                    t.anchor_count, t.alpha, t.beta, 100.0 * t.auroc_value,
                    100.0 * t.auprc_value);
    }
    const GridTrial& b = result.best;
    std::printf("best L=%d K=%zu alpha=%.4g beta=%.4g auroc=%.2f auprc=%.2f\n", b.layers,
                b.anchor_count, b.alpha, b.beta, 100.0 * b.auroc_value, 100.0 * b.auprc_value);

    if (!o.out.empty()) {
        std::FILE* f = std::fopen(o.out.c_str(), "w");
        if (!f) throw IoError("cannot write " + o.out);
        std::fprintf(f, "layers\tanchors\talpha\tbeta\tauroc\tauprc\n");
        for (const GridTrial& t : result.trials) {
            std::fprintf(f, "%d\t%zu\t%.17g\t%.17g\t%.17g\t%.17g\n", t.layers, t.anchor_count,
                         t.alpha, t.beta, t.auroc_value, t.auprc_value);
        }
        std::fclose(f);
    }
    return 0;
}

struct GenOpts {
    std::string out;
    std::size_t n = 1000;
    std::size_t m = 16;
    std::uint64_t seed = 1;
    std::size_t cliques = 3;
    std::size_t clique_size = 5;
    std::size_t contextual = 15;
    std::string name;
};

int run_generate(const GenOpts& o) {
    SyntheticParams params;
    params.n = o.n;
    params.m = o.m;
    params.seed = o.seed;
    params.n_cliques = o.cliques;
    params.clique_size = o.clique_size;
    params.n_contextual = o.contextual;
    Dataset ds = generate_synthetic(params);
    if (!o.name.empty()) ds.name = o.name;
    save_dataset(ds, o.out);
    std::size_t anomalies = 0;
    for (std::int8_t l : ds.labels) anomalies += l == 1;
    std::printf("generated %s: nodes=%zu edges=%zu dim=%zu anomalies=%zu\n", ds.name.c_str(),
                ds.graph.num_nodes(), ds.graph.num_edges(), ds.features.cols(), anomalies);
    return 0;
}

struct BenchOpts {
    std::vector<std::size_t> edge_targets = {100000, 200000, 400000, 800000};
    std::size_t m = 16;
    int layers = 8;
    std::size_t anchors = 50;
    std::uint64_t seed = 1;
    int threads = 0;
    int repeats = 3;
};

int run_bench(const BenchOpts& o) {
    if (o.edge_targets.empty()) throw InvalidParams("bench needs at least one edge count");
    if (o.repeats < 1) throw InvalidParams("repeats must be >= 1");
    PipelineConfig cfg;
    cfg.layers = o.layers;
    cfg.anchor_count = o.anchors;
    cfg.sigma = 1e-8;
    cfg.threads = resolve_threads(o.threads);
    cfg.validate();

    std::printf("edges\tnodes\tencode_s\tanchors_s\tscoring_s\ttotal_s\tpeak_rss_mb\n");
    std::vector<double> log_e, log_t;
    for (std::size_t target : o.edge_targets) {
        // the generator wires ~4 undirected edges per node
        const std::size_t n = std::max<std::size_t>(2 * o.anchors, target / 4);
        SyntheticParams params;
        params.n = n;
        params.m = o.m;
        params.seed = o.seed;
        params.n_cliques = 0;
        params.n_contextual = 0;
        const Dataset ds = generate_synthetic(params);

        StageTimes best;
        double best_total = 0.0;
        for (int r = 0; r < o.repeats; ++r) {
            const PipelineResult res = run_pipeline(ds.graph, ds.features, cfg);
            if (r == 0 || res.times.total() < best_total) {
                best = res.times;
                best_total = res.times.total();
            }
        }
        const std::size_t actual_edges = ds.graph.num_edges();
        std::printf("%zu\t%zu\t%.4f\t%.4f\t%.4f\t%.4f\t%.1f\n", actual_edges,
                    ds.graph.num_nodes(), best.encode, best.anchors, best.scoring, best_total,
                    peak_rss_mb());
        log_e.push_back(std::log(static_cast<double>(actual_edges)));
        log_t.push_back(std::log(best.encode));
    }

    if (log_e.size() >= 2) {
        double me = 0.0, mt = 0.0;
        for (std::size_t i = 0; i < log_e.size(); ++i) {
            me += log_e[i];
            mt += log_t[i];
        }
        me /= static_cast<double>(log_e.size());
        mt /= static_cast<double>(log_t.size());
        double cov = 0.0, var = 0.0;
        for (std::size_t i = 0; i < log_e.size(); ++i) {
            cov += (log_e[i] - me) * (log_t[i] - mt);
            var += (log_e[i] - me) * (log_e[i] - me);
        }
        std::printf("encode_loglog_slope=%.3f\n", cov / var);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Training-free graph anomaly detection"};
    app.require_subcommand(1);

    ScoreOpts score;
    CLI::App* score_cmd = app.add_subcommand("score", "Score a dataset and write one row per node");
    score_cmd->add_option("--dataset", score.dataset, "Dataset directory")->required();
    score_cmd->add_option("--out", score.out, "Output scores file")->required();
    score_cmd->add_option("--L", score.layers, "Propagation depth");
    score_cmd->add_option("--K", score.anchors, "Anchors per set");
    score_cmd->add_option("--alpha", score.alpha, "Weight of the positive-anchor part");
    score_cmd->add_option("--beta", score.beta, "Weight of the negative-anchor part");
    score_cmd->add_option("--sigma", score.sigma, "Affinity denominator guard");
    score_cmd->add_option("--sim-mode", score.sim_mode, "Similarity mode: paper or cosine");
    score_cmd->add_option("--stat-mode", score.stat_mode, "Distance statistic: sum, min, max or avg");
    score_cmd->add_option("--threads", score.threads, "Worker threads (default: FREEGAD_THREADS or 1)");
    score_cmd->add_flag("--standardize", score.standardize, "Standardize feature columns first");
    score_cmd->add_flag("--row-normalize", score.row_normalize, "L2-normalize feature rows first");

    EvalOpts eval;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a scores file against labels");
    eval_cmd->add_option("--scores", eval.scores, "Scores file from `score`")->required();
    eval_cmd->add_option("--dataset", eval.dataset, "Dataset directory providing labels.tsv");

    GridOpts grid;
    CLI::App* grid_cmd = app.add_subcommand("grid", "Search hyperparameters against labels");
    grid_cmd->add_option("--dataset", grid.dataset, "Dataset directory (labels required)")->required();
    grid_cmd->add_option("--out", grid.out, "Optional TSV file for the full trial table");
    grid_cmd->add_option("--L", grid.layer_values, "Depth values (comma separated)")->delimiter(',');
    grid_cmd->add_option("--K", grid.anchor_values, "Anchor counts (comma separated)")->delimiter(',');
    grid_cmd->add_option("--alpha", grid.alpha_values, "Alpha values (comma separated)")->delimiter(',');
    grid_cmd->add_option("--beta", grid.beta_values, "Beta values (comma separated)")->delimiter(',');
    grid_cmd->add_option("--random", grid.random_trials, "Extra random trials from the search ranges");
    grid_cmd->add_option("--seed", grid.seed, "Seed for the random trials");
    grid_cmd->add_option("--sigma", grid.sigma, "Affinity denominator guard");
    grid_cmd->add_option("--sim-mode", grid.sim_mode, "Similarity mode: paper or cosine");
    grid_cmd->add_option("--stat-mode", grid.stat_mode, "Distance statistic: sum, min, max or avg");
    grid_cmd->add_option("--threads", grid.threads, "Worker threads");
    grid_cmd->add_flag("--standardize", grid.standardize, "Standardize feature columns first");
    grid_cmd->add_flag("--row-normalize", grid.row_normalize, "L2-normalize feature rows first");

    GenOpts gen;
    CLI::App* gen_cmd = app.add_subcommand("generate", "Write a synthetic benchmark dataset");
    gen_cmd->add_option("--out", gen.out, "Dataset directory to create")->required();
    gen_cmd->add_option("--n", gen.n, "Node count");
    gen_cmd->add_option("--m", gen.m, "Feature dimension");
    gen_cmd->add_option("--seed", gen.seed, "Generator seed");
    gen_cmd->add_option("--cliques", gen.cliques, "Structural anomaly groups");
    gen_cmd->add_option("--clique-size", gen.clique_size, "Nodes per structural group");
    gen_cmd->add_option("--contextual", gen.contextual, "Contextual anomalies");
    gen_cmd->add_option("--name", gen.name, "Dataset name override");

    BenchOpts bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Measure runtime scaling on synthetic graphs");
    bench_cmd->add_option("--edges", bench.edge_targets, "Edge counts (comma separated)")->delimiter(',');
    bench_cmd->add_option("--m", bench.m, "Feature dimension");
    bench_cmd->add_option("--L", bench.layers, "Propagation depth");
    bench_cmd->add_option("--K", bench.anchors, "Anchors per set");
    bench_cmd->add_option("--seed", bench.seed, "Generator seed");
    bench_cmd->add_option("--threads", bench.threads, "Worker threads");
    bench_cmd->add_option("--repeats", bench.repeats, "Timing repetitions per size (best kept)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (score_cmd->parsed()) return run_score(score);
        if (eval_cmd->parsed()) return run_eval(eval);
        if (grid_cmd->parsed()) return run_grid(grid);
        if (gen_cmd->parsed()) return run_generate(gen);
        if (bench_cmd->parsed()) return run_bench(bench);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    }
    return kExitUsage;
}

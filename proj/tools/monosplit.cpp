// monosplit: recommends monolith-to-microservices decompositions by
// clustering classes over call-graph encodings or a blended similarity
// graph, and scores any decomposition with five migration metrics.
//
// Exit codes: 0 success, 2 usage or input error, 3 empty result.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monosplit/monosplit.hpp"

namespace fs = std::filesystem;
using namespace monosplit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitEmpty = 3;

int log_level() {
    static const int level = [] {
        const char* v = std::getenv("MONOSPLIT_LOG");
        if (!v || !*v) return 0;
        const std::string s(v);
        if (s == "debug") return 2;
        return 1;  // any other non-empty value: info
    }();
    return level;
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

void info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "info: " << msg << "\n";
}

void debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "debug: " << msg << "\n";
}

struct RunConfig {
    std::string calls_path;
    std::string tokens_path;
    std::string corpus_path;
    std::string out_dir = ".";
    std::string approach = "codependent";   // naive | codependent | graph
    std::string algorithm = "bmsc";         // dbscan | meanshift | bmsc |
                                            // girvan-newman | louvain
    std::string gn_mode = "paper_literal";  // or betweenness
    std::string structural_mode = "symmetric";  // or literal
    std::string formats = "json";
    double threshold = 0.0;
    HyperParams params;
};

bool wants_format(const RunConfig& cfg, const std::string& fmt) {
    std::size_t pos = 0;
    const std::string& s = cfg.formats;
    while (pos <= s.size()) {
        const std::size_t next = s.find(',', pos);
        const std::string piece =
            s.substr(pos, next == std::string::npos ? next : next - pos);
        if (piece == fmt) return true;
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return false;
}

void add_hyper_flags(CLI::App* cmd, RunConfig& cfg, std::string& grid,
                     std::string& neighborhood,
                     std::optional<double>& bandwidth) {
    cmd->add_option("--eps", cfg.params.eps, "DBSCAN / BMSC radius");
    cmd->add_option("--min-pts", cfg.params.min_pts, "DBSCAN density minimum");
    cmd->add_option("--alpha", cfg.params.alpha,
                    "structural weight in the similarity blend");
    cmd->add_option("--grid", grid, "BMSC grid as RxC, e.g. 3x3");
    cmd->add_option("--neighborhood", neighborhood,
                    "BMSC resampling structure: linear5, linear9, compact9, "
                    "compact13");
    cmd->add_option("--bandwidth", bandwidth,
                    "mean-shift window radius (default: median pairwise "
                    "distance)");
    cmd->add_option("--seed", cfg.params.seed, "RNG seed");
    cmd->add_option("--min-pts-imodes", cfg.params.min_pts_imodes,
                    "density minimum for DBSCAN over iModes");
    cmd->add_option("--max-bmsc-iters", cfg.params.max_bmsc_iters,
                    "BMSC iteration cap");
    cmd->add_option("--threshold", cfg.threshold,
                    "minimum similarity for a graph edge");
}

void finish_hyper_flags(RunConfig& cfg, const std::string& grid,
                        const std::string& neighborhood,
                        const std::optional<double>& bandwidth) {
    if (!grid.empty()) {
        const std::size_t x = grid.find('x');
        if (x == std::string::npos)
            throw CLI::ValidationError("--grid", "expected RxC, e.g. 3x3");
        try {
            cfg.params.grid_rows = std::stoi(grid.substr(0, x));
            cfg.params.grid_cols = std::stoi(grid.substr(x + 1));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--grid", "expected RxC, e.g. 3x3");
        }
    }
    if (!neighborhood.empty()) {
        auto n = neighborhood_from_string(neighborhood);
        if (!n)
            throw CLI::ValidationError("--neighborhood",
                                       "unknown structure: " + neighborhood);
        cfg.params.neighborhood = *n;
    }
    cfg.params.bandwidth = bandwidth;
    if (!(cfg.params.alpha >= 0.0 && cfg.params.alpha <= 1.0))
        throw CLI::ValidationError("--alpha", "must be in [0,1]");
    cfg.params.beta = 1.0 - cfg.params.alpha;
}

TokenCorpus load_corpus_any(const RunConfig& cfg) {
    if (!cfg.corpus_path.empty()) return load_corpus_json(cfg.corpus_path);
    if (cfg.tokens_path.empty())
        throw std::runtime_error("this run needs --tokens or --corpus");
    std::vector<std::string> warnings;
    TokenCorpus corpus = build_corpus(load_tokens_csv(cfg.tokens_path), &warnings);
    for (const auto& w : warnings) warn(w);
    return corpus;
}

CallMatrix load_calls_checked(const std::string& path) {
    CallMatrix calls = load_calls(path);
    if (calls.dropped_self_calls() > 0)
        warn("dropped " + std::to_string(calls.dropped_self_calls()) +
             " self-calls from the diagonal");
    return calls;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

bool is_graph_algorithm(const std::string& algorithm) {
    return algorithm == "girvan-newman" || algorithm == "louvain";
}

void check_pairing(const RunConfig& cfg) {
    const bool graph_approach = cfg.approach == "graph";
    if (graph_approach != is_graph_algorithm(cfg.algorithm))
        throw CLI::ValidationError(
            "--algorithm", "approach '" + cfg.approach +
                               "' cannot run algorithm '" + cfg.algorithm +
                               "' (graph pairs with girvan-newman/louvain, "
                               "point encodings with dbscan/meanshift/bmsc)");
}

SimilarityMatrix blended_matrix(const RunConfig& cfg, const CallMatrix& calls,
                                const TokenCorpus& corpus) {
    for (const auto& w : validate_project(calls, corpus)) warn(w);
    const StructuralMode mode = cfg.structural_mode == "literal"
                                    ? StructuralMode::literal
                                    : StructuralMode::symmetric_total;
    SimilarityMatrix structural = structural_similarity(calls, mode);
    // semantic similarity needs tf-idf vectors aligned with matrix order
    std::vector<TfidfVector> aligned(calls.size());
    const auto vectors = tfidf(corpus);
    for (std::size_t i = 0; i < calls.size(); ++i) {
        auto doc = corpus.doc_index(calls.name(i));
        if (doc)
            aligned[i] = vectors[*doc];
        else
            aligned[i].weights.assign(corpus.vocabulary.size(), 0.0);
    }
    SimilarityMatrix semantic = semantic_similarity(aligned);
    return class_similarity(structural, semantic, cfg.params.alpha,
                            cfg.params.beta);
}

struct DecomposeOutcome {
    Decomposition decomposition;
    std::optional<SimilarityGraph> graph;  // set for the graph approach
};

DecomposeOutcome run_decompose(const RunConfig& cfg, const CallMatrix& calls) {
    DecomposeOutcome out;
    if (cfg.approach == "graph") {
        const TokenCorpus corpus = load_corpus_any(cfg);
        const SimilarityMatrix cs = blended_matrix(cfg, calls, corpus);
        out.graph = build_graph(cs, calls.names(), cfg.threshold);
        debug("graph has " + std::to_string(out.graph->edges.size()) +
              " edges");
        if (cfg.algorithm == "louvain") {
            out.decomposition = louvain(*out.graph, cfg.params.seed);
        } else {
            const GnMode mode = cfg.gn_mode == "betweenness"
                                    ? GnMode::betweenness
                                    : GnMode::paper_literal;
            const GirvanNewmanResult gn = girvan_newman(*out.graph, mode);
            debug("girvan-newman recorded " +
                  std::to_string(gn.levels.size()) + " levels; recommending " +
                  std::to_string(gn.recommended));
            out.decomposition = gn.levels[gn.recommended];
        }
        return out;
    }

    Encoding enc = cfg.approach == "naive" ? naive_encoding(calls)
                                           : codependent_encoding(calls);
    if (!enc.degenerate.empty()) {
        std::string msg = "degenerate encodings for:";
        for (std::size_t i : enc.degenerate) msg += " " + calls.name(i);
        warn(msg);
    }
    ClusterResult res;
    if (cfg.algorithm == "dbscan") {
        res = dbscan(enc.points, cfg.params.eps, cfg.params.min_pts);
    } else if (cfg.algorithm == "meanshift") {
        const double bw = cfg.params.bandwidth
                              ? *cfg.params.bandwidth
                              : estimate_bandwidth(enc.points);
        debug("mean-shift bandwidth " + format_double(bw));
        res = mean_shift(enc.points, bw);
    } else {
        std::vector<std::string> warnings;
        res = bmsc(enc.points, cfg.params, &warnings);
        for (const auto& w : warnings) warn(w);
        debug("bmsc converged after " + std::to_string(res.iterations) +
              " iterations");
    }
    out.decomposition = decomposition_from_labels(calls.names(), res.labels);
    return out;
}

int cmd_preprocess(const RunConfig& cfg) {
    std::vector<std::string> warnings;
    const TokenCorpus corpus =
        build_corpus(load_tokens_csv(cfg.tokens_path), &warnings);
    for (const auto& w : warnings) warn(w);
    fs::create_directories(cfg.out_dir);
    save_corpus_json(corpus, (fs::path(cfg.out_dir) / "corpus.json").string());
    info("wrote " + (fs::path(cfg.out_dir) / "corpus.json").string());
    return kExitOk;
}

int cmd_similarity(const RunConfig& cfg, const std::string& kind) {
    const CallMatrix calls = load_calls_checked(cfg.calls_path);
    fs::create_directories(cfg.out_dir);
    const fs::path out = fs::path(cfg.out_dir) / "similarity.csv";
    if (kind == "structural") {
        const StructuralMode mode = cfg.structural_mode == "literal"
                                        ? StructuralMode::literal
                                        : StructuralMode::symmetric_total;
        write_text(out,
                   similarity_to_csv(structural_similarity(calls, mode),
                                     calls.names()));
    } else if (kind == "semantic") {
        const TokenCorpus corpus = load_corpus_any(cfg);
        for (const auto& w : validate_project(calls, corpus)) warn(w);
        std::vector<TfidfVector> aligned(calls.size());
        const auto vectors = tfidf(corpus);
        for (std::size_t i = 0; i < calls.size(); ++i) {
            auto doc = corpus.doc_index(calls.name(i));
            if (doc)
                aligned[i] = vectors[*doc];
            else
                aligned[i].weights.assign(corpus.vocabulary.size(), 0.0);
        }
        write_text(out, similarity_to_csv(semantic_similarity(aligned),
                                          calls.names()));
    } else {
        const TokenCorpus corpus = load_corpus_any(cfg);
        write_text(out, similarity_to_csv(blended_matrix(cfg, calls, corpus),
                                          calls.names()));
    }
    info("wrote " + out.string());
    return kExitOk;
}

int cmd_decompose(const RunConfig& cfg) {
    check_pairing(cfg);
    if (wants_format(cfg, "dot") && cfg.approach != "graph")
        throw CLI::ValidationError("--format",
                                   "dot output requires the graph approach");
    const CallMatrix calls = load_calls_checked(cfg.calls_path);
    const DecomposeOutcome outcome = run_decompose(cfg, calls);
    if (outcome.decomposition.services.empty()) {
        std::cerr << "error: all points classified as noise\n";
        return kExitEmpty;
    }
    const MetricsReport report = evaluate(calls, outcome.decomposition);
    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);
    save_decomposition_json(outcome.decomposition,
                            (dir / "decomposition.json").string());
    if (wants_format(cfg, "json"))
        save_metrics_json(report, (dir / "metrics.json").string());
    if (wants_format(cfg, "csv"))
        save_metrics_csv(report, (dir / "metrics.csv").string());
    if (wants_format(cfg, "dot") && outcome.graph)
        write_text(dir / "graph.dot",
                   to_dot(*outcome.graph, &outcome.decomposition));
    info("services: " + std::to_string(outcome.decomposition.service_count()) +
         ", noise: " + std::to_string(outcome.decomposition.noise.size()));
    return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg, const std::string& decomposition_path) {
    const CallMatrix calls = load_calls_checked(cfg.calls_path);
    const Decomposition d = load_decomposition_json(decomposition_path);
    const MetricsReport report = evaluate(calls, d);
    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);
    if (wants_format(cfg, "json"))
        save_metrics_json(report, (dir / "metrics.json").string());
    if (wants_format(cfg, "csv"))
        save_metrics_csv(report, (dir / "metrics.csv").string());
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, double eps_min, double eps_max,
              double eps_step) {
    check_pairing(cfg);
    if (cfg.algorithm != "dbscan" && cfg.algorithm != "bmsc")
        throw CLI::ValidationError("--algorithm",
                                   "sweep varies eps; use dbscan or bmsc");
    if (!(eps_step > 0.0))
        throw CLI::ValidationError("--eps-step", "step must be > 0");
    if (eps_max < eps_min)
        throw CLI::ValidationError("--eps-max", "range must be non-empty");
    const CallMatrix calls = load_calls_checked(cfg.calls_path);

    std::string csv = "eps,services,noise,sm,icp,ifn,ned,dup,note\n";
    const int steps =
        static_cast<int>(std::floor((eps_max - eps_min) / eps_step + 1e-9));
    for (int k = 0; k <= steps; ++k) {
        // kill accumulated float error so eps prints as entered
        const double eps =
            std::round((eps_min + k * eps_step) * 1e9) / 1e9;
        csv += format_double(eps);
        if (!(eps > 0.0)) {
            csv += ",,,,,,,,degenerate\n";
            continue;
        }
        RunConfig run = cfg;
        run.params.eps = eps;
        const DecomposeOutcome outcome = run_decompose(run, calls);
        if (outcome.decomposition.services.empty()) {
            csv += ",0," + std::to_string(outcome.decomposition.noise.size()) +
                   ",,,,,,empty\n";
            continue;
        }
        const MetricsReport r = evaluate(calls, outcome.decomposition);
        csv += "," + std::to_string(outcome.decomposition.service_count());
        csv += "," + std::to_string(outcome.decomposition.noise.size());
        csv += "," + format_double(r.sm);
        csv += "," + format_double(r.icp);
        csv += "," + format_double(r.ifn);
        csv += "," + format_double(r.ned);
        csv += "," + std::to_string(r.dup);
        csv += ",\n";
    }
    fs::create_directories(cfg.out_dir);
    write_text(fs::path(cfg.out_dir) / "sweep.csv", csv);
    info("wrote " + (fs::path(cfg.out_dir) / "sweep.csv").string());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "monosplit: microservice decomposition recommendations for "
        "monolithic codebases"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string grid, neighborhood_name, kind = "blended";
    std::string decomposition_path;
    std::optional<double> bandwidth;
    double eps_min = 0.0, eps_max = 1.0, eps_step = 0.05;

    CLI::App* pre = app.add_subcommand(
        "preprocess", "tokens.csv -> corpus.json (split, filter, stem)");
    pre->add_option("--tokens", cfg.tokens_path, "raw token CSV")->required();
    pre->add_option("--out", cfg.out_dir, "output directory");

    CLI::App* sim = app.add_subcommand(
        "similarity", "dump a structural/semantic/blended similarity matrix");
    sim->add_option("--calls", cfg.calls_path, "call matrix CSV/JSON")
        ->required();
    sim->add_option("--tokens", cfg.tokens_path, "raw token CSV");
    sim->add_option("--corpus", cfg.corpus_path, "preprocessed corpus JSON");
    sim->add_option("--kind", kind, "structural | semantic | blended");
    sim->add_option("--alpha", cfg.params.alpha, "structural weight");
    sim->add_option("--structural-mode", cfg.structural_mode,
                    "symmetric | literal");
    sim->add_option("--out", cfg.out_dir, "output directory");

    CLI::App* dec = app.add_subcommand(
        "decompose", "recommend a decomposition and score it");
    dec->add_option("--calls", cfg.calls_path, "call matrix CSV/JSON")
        ->required();
    dec->add_option("--tokens", cfg.tokens_path, "raw token CSV");
    dec->add_option("--corpus", cfg.corpus_path, "preprocessed corpus JSON");
    dec->add_option("--approach", cfg.approach,
                    "naive | codependent | graph");
    dec->add_option("--algorithm", cfg.algorithm,
                    "dbscan | meanshift | bmsc | girvan-newman | louvain");
    dec->add_option("--gn-mode", cfg.gn_mode, "paper_literal | betweenness");
    dec->add_option("--structural-mode", cfg.structural_mode,
                    "symmetric | literal");
    dec->add_option("--format", cfg.formats,
                    "comma list of json, csv, dot");
    dec->add_option("--out", cfg.out_dir, "output directory");
    add_hyper_flags(dec, cfg, grid, neighborhood_name, bandwidth);

    CLI::App* eva = app.add_subcommand(
        "evaluate", "score an existing decomposition against a call matrix");
    eva->add_option("--calls", cfg.calls_path, "call matrix CSV/JSON")
        ->required();
    eva->add_option("--decomposition", decomposition_path,
                    "decomposition JSON")
        ->required();
    eva->add_option("--format", cfg.formats, "comma list of json, csv");
    eva->add_option("--out", cfg.out_dir, "output directory");

    CLI::App* swp = app.add_subcommand(
        "sweep", "re-run a decomposition across an eps range");
    swp->add_option("--calls", cfg.calls_path, "call matrix CSV/JSON")
        ->required();
    swp->add_option("--tokens", cfg.tokens_path, "raw token CSV");
    swp->add_option("--corpus", cfg.corpus_path, "preprocessed corpus JSON");
    swp->add_option("--approach", cfg.approach, "naive | codependent");
    swp->add_option("--algorithm", cfg.algorithm, "dbscan | bmsc");
    swp->add_option("--eps-min", eps_min, "range start");
    swp->add_option("--eps-max", eps_max, "range end");
    swp->add_option("--eps-step", eps_step, "range step");
    swp->add_option("--out", cfg.out_dir, "output directory");
    add_hyper_flags(swp, cfg, grid, neighborhood_name, bandwidth);

    try {
        app.parse(argc, argv);
        finish_hyper_flags(cfg, grid, neighborhood_name, bandwidth);
        if (pre->parsed()) return cmd_preprocess(cfg);
        if (sim->parsed()) return cmd_similarity(cfg, kind);
        if (dec->parsed()) return cmd_decompose(cfg);
        if (eva->parsed()) return cmd_evaluate(cfg, decomposition_path);
        if (swp->parsed()) return cmd_sweep(cfg, eps_min, eps_max, eps_step);
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

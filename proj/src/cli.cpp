#include "infoaccess/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "infoaccess/advantage.hpp"
#include "infoaccess/augmentation.hpp"
#include "infoaccess/evaluation.hpp"
#include "infoaccess/exact_oracle.hpp"
#include "infoaccess/graph.hpp"
#include "infoaccess/io.hpp"
#include "infoaccess/sampler.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace infoaccess {

namespace {

/// Invalid user configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string input;
    std::vector<double> alpha;
    std::uint32_t samples = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string output_dir;
    bool no_lcc = false;

    std::size_t k = 0;
    std::string heuristic = "bc-chord";
    std::size_t eval_every = 10;

    std::size_t signature_pairs = 0;
    bool exact_signatures = false;
    bool raw_distributions = false;

    bool binary = false;
    std::string estimate;
    std::string before;
    std::string after;

    std::size_t max_edges = kDefaultOracleEdgeCap;
    std::size_t reps = 10;
    std::vector<OriginalId> nodes;
    bool exact = false;
};

json config_json(const RunConfig& c) {
    json j{{"command", c.command}};
    auto put_common = [&] {
        j["input"] = c.input;
        j["alpha"] = c.alpha;
        j["lcc"] = !c.no_lcc;
        j["workers"] = c.workers;
    };
    auto put_sampling = [&] {
        j["samples"] = c.samples;
        j["seed"] = c.seed;
    };
    auto put_signature = [&] {
        j["signature_pairs"] = c.signature_pairs;
        j["exact_signatures"] = c.exact_signatures;
        j["raw_distributions"] = c.raw_distributions;
    };
    if (c.command == "estimate") {
        put_common();
        put_sampling();
        j["binary"] = c.binary;
    } else if (c.command == "augment") {
        put_common();
        put_sampling();
        put_signature();
        j["k"] = c.k;
        j["heuristic"] = c.heuristic;
        j["eval_every"] = c.eval_every;
    } else if (c.command == "evaluate") {
        put_common();
        put_sampling();
        put_signature();
        j["estimate"] = c.estimate;
        j["before"] = c.before;
        j["after"] = c.after;
    } else if (c.command == "oracle") {
        put_common();
        j["max_edges"] = c.max_edges;
    } else if (c.command == "stability") {
        put_common();
        put_sampling();
        j["reps"] = c.reps;
    } else if (c.command == "control") {
        put_common();
        put_sampling();
        j["nodes"] = c.nodes;
        j["exact"] = c.exact;
    }
    return j;
}

void validate(const RunConfig& c) {
    const bool needs_input =
        !(c.command == "evaluate" && (!c.estimate.empty() || !c.before.empty()));
    if (needs_input && c.input.empty()) throw ConfigError("--input: required");
    const bool needs_alpha = needs_input;
    if (needs_alpha && c.alpha.empty()) throw ConfigError("--alpha: required");
    for (double a : c.alpha) {
        if (!(a > 0.0 && a < 1.0)) {
            throw ConfigError(fmt::format("--alpha: {} is not strictly between 0 and 1", a));
        }
    }
    if (c.samples == 0) throw ConfigError("--samples: must be at least 1");
    if (c.command != "oracle" && c.output_dir.empty()) {
        throw ConfigError("--output-dir: required");
    }
    if (c.command == "augment") {
        const auto kind = parse_heuristic(c.heuristic);
        if (!kind) {
            throw ConfigError(fmt::format(
                "--heuristic: unknown '{}' (rand, bc-chord, bc-one, bc-both, infl, "
                "diam-chord, diam-both)",
                c.heuristic));
        }
        if (adds_edge_pairs(*kind) && c.k % 2 != 0) {
            throw ConfigError(fmt::format(
                "--k: {} adds two edges per step, so the budget must be even (got {})",
                c.heuristic, c.k));
        }
        if (c.eval_every == 0) throw ConfigError("--eval-every: must be at least 1");
    }
    if (c.command == "stability" && c.reps < 2) throw ConfigError("--reps: must be at least 2");
    if (c.command == "evaluate" && (c.before.empty() != c.after.empty())) {
        throw ConfigError("--before/--after: both files are required for a comparison");
    }
}

struct LoadedInput {
    Graph graph;
    std::string sha256;
    LoadWarnings warnings;
    std::size_t raw_nodes = 0;
    std::size_t raw_edges = 0;
};

LoadedInput load_input(const RunConfig& c) {
    LoadedInput in;
    in.sha256 = sha256_file_hex(c.input);
    Graph raw = load_edge_list_file(c.input, &in.warnings);
    in.raw_nodes = raw.node_count();
    in.raw_edges = raw.edge_count();
    if (in.warnings.duplicate_edges + in.warnings.self_loops > 0) {
        std::cerr << fmt::format("warning: dropped {} duplicate edge(s) and {} self-loop(s)\n",
                                 in.warnings.duplicate_edges, in.warnings.self_loops);
    }
    in.graph = c.no_lcc ? std::move(raw) : largest_connected_component(raw);
    return in;
}

json manifest_json(const RunConfig& c, const LoadedInput* in) {
    json j;
    j["tool"] = "infoaccess";
    j["version"] = kToolVersion;
    j["config"] = config_json(c);
    if (in != nullptr) {
        j["input"] = {{"path", c.input}, {"sha256", in->sha256}};
        j["graph"] = {{"raw_nodes", in->raw_nodes},
                      {"raw_edges", in->raw_edges},
                      {"dropped_duplicates", in->warnings.duplicate_edges},
                      {"dropped_self_loops", in->warnings.self_loops},
                      {"nodes", in->graph.node_count()},
                      {"edges", in->graph.edge_count()}};
    }
    return j;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    return out;
}

void write_json(const fs::path& path, const json& j) {
    auto out = open_output(path);
    out << j.dump(2) << '\n';
}

/// One directory per alpha when several are given.
fs::path alpha_dir(const RunConfig& c, double alpha) {
    fs::path dir(c.output_dir);
    if (c.alpha.size() > 1) dir /= fmt::format("alpha_{}", alpha);
    fs::create_directories(dir);
    return dir;
}

SignatureDistanceOptions signature_options(const RunConfig& c) {
    SignatureDistanceOptions o;
    o.seed = c.seed;
    o.workers = c.workers;
    o.keep_distances = c.raw_distributions;
    if (c.exact_signatures) {
        o.mode = SignatureDistanceOptions::Mode::Exact;
    } else if (c.signature_pairs > 0) {
        o.mode = SignatureDistanceOptions::Mode::Sampled;
        o.sampled_pairs = c.signature_pairs;
    }
    return o;
}

MetricsConfig metrics_config(const RunConfig& c, double alpha, std::size_t nodes,
                             const std::string& hash) {
    MetricsConfig m;
    m.alpha = alpha;
    m.samples = c.samples;
    m.seed = c.seed;
    m.nodes = nodes;
    m.input_hash = hash;
    m.heuristic = c.command == "augment" ? c.heuristic : "init";
    m.budget = c.command == "augment" ? c.k : 0;
    return m;
}

template <AccessMatrix A>
void write_metrics(const fs::path& dir, const RunConfig& c, const A& access,
                   std::size_t edge_count, MetricsConfig config, std::size_t k) {
    const auto sig = signature_options(c);
    if (k == 0 && access.size() > sig.exact_node_limit) {
        if (sig.mode == SignatureDistanceOptions::Mode::Exact) {
            std::cerr << fmt::format(
                "warning: all-pairs signature distances on {} nodes cost O(n^3)\n", access.size());
        } else if (sig.mode == SignatureDistanceOptions::Mode::Auto) {
            std::cerr << fmt::format(
                "note: {} nodes exceed {}; signature distances use {} sampled pairs "
                "(--exact-signatures for all pairs)\n",
                access.size(), sig.exact_node_limit, sig.sampled_pairs);
        }
    }
    const MetricsBundle m = compute_metrics(access, edge_count, std::move(config), k, sig);
    write_json(dir / fmt::format("metrics_k{}.json", k), to_json(m));
    if (c.raw_distributions) {
        auto acc = open_output(dir / fmt::format("access_distances_k{}.csv", k));
        write_access_csv(acc, access);
        const auto full = signature_distances(access, SignatureMetric::L1, sig);
        auto out = open_output(dir / fmt::format("signature_distances_k{}.csv", k));
        out << "distance\n";
        for (double d : full.distances) out << fmt::format("{:.6f}\n", d);
    }
}

void cmd_estimate(const RunConfig& c) {
    const LoadedInput in = load_input(c);
    for (double a : c.alpha) {
        const fs::path dir = alpha_dir(c, a);
        const AccessEstimate est = estimate_access(in.graph, TransmissionProbability(a),
                                                   c.samples, c.seed, {c.workers});
        auto access = open_output(dir / "access.csv");
        write_access_csv(access, est);
        const AdvantageVector adv = advantage_vector(est);
        auto advantage = open_output(dir / "advantage.csv");
        write_advantage_csv(advantage, est.labels(), adv);
        write_json(dir / "advantage.json", advantage_summary_json(est.labels(), adv));
        if (c.binary) {
            auto bin = open_output(dir / "access.bin");
            write_estimate_binary(bin, est, a, c.seed);
        }
        json manifest = manifest_json(c, &in);
        manifest["alpha"] = a;
        write_json(dir / "manifest.json", manifest);
    }
}

void cmd_augment(const RunConfig& c) {
    const LoadedInput in = load_input(c);
    const HeuristicKind kind = *parse_heuristic(c.heuristic);
    for (double a : c.alpha) {
        const fs::path dir = alpha_dir(c, a);
        const MetricsConfig mconf = metrics_config(c, a, in.graph.node_count(), in.sha256);
        std::optional<std::size_t> last_written;
        AugmentationOptions opts;
        opts.sampler.workers = c.workers;
        opts.observer = [&](const AugmentationState& s) {
            if (s.step % c.eval_every != 0) return;
            write_metrics(dir, c, s.estimate, s.ensemble.graph().edge_count(), mconf,
                          s.edges_added);
            last_written = s.edges_added;
        };
        const AugmentationResult run = run_augmentation(
            in.graph, kind, c.k, TransmissionProbability(a), c.samples, c.seed, opts);
        const std::size_t added = run.trace.edges_added();
        if (last_written != added) {
            write_metrics(dir, c, run.estimate, run.graph.edge_count(), mconf, added);
        }
        auto trace = open_output(dir / "trace.csv");
        write_trace_csv(trace, run.graph, run.trace);
        auto edges = open_output(dir / "augmented.edges");
        write_edge_list(edges, run.graph);
        json manifest = manifest_json(c, &in);
        manifest["alpha"] = a;
        manifest["trace"] = trace_json(run.graph, run.trace);
        write_json(dir / "manifest.json", manifest);
    }
}

void cmd_evaluate(const RunConfig& c) {
    fs::create_directories(c.output_dir);
    const fs::path dir(c.output_dir);
    if (!c.before.empty()) {
        auto read = [](const std::string& path) {
            std::ifstream f(path);
            if (!f) throw std::runtime_error(fmt::format("cannot open '{}'", path));
            return metrics_from_json(json::parse(f));
        };
        const DeltaReport delta = compare_runs(read(c.before), read(c.after));
        write_json(dir / "comparison.json", to_json(delta));
        write_json(dir / "manifest.json", manifest_json(c, nullptr));
        return;
    }
    if (!c.estimate.empty()) {
        std::ifstream f(c.estimate, std::ios::binary);
        if (!f) throw std::runtime_error(fmt::format("cannot open '{}'", c.estimate));
        const StoredEstimate stored = read_estimate_binary(f);
        MetricsConfig mconf;
        mconf.alpha = stored.alpha;
        mconf.samples = stored.estimate.samples();
        mconf.seed = stored.seed;
        mconf.nodes = stored.estimate.size();
        mconf.input_hash = sha256_file_hex(c.estimate);
        mconf.heuristic = "init";
        // Edge count is not stored with an estimate.
        write_metrics(dir, c, stored.estimate, 0, mconf, 0);
        write_json(dir / "manifest.json", manifest_json(c, nullptr));
        return;
    }
    const LoadedInput in = load_input(c);
    for (double a : c.alpha) {
        const fs::path adir = alpha_dir(c, a);
        const AccessEstimate est = estimate_access(in.graph, TransmissionProbability(a),
                                                   c.samples, c.seed, {c.workers});
        write_metrics(adir, c, est, in.graph.edge_count(),
                      metrics_config(c, a, in.graph.node_count(), in.sha256), 0);
        json manifest = manifest_json(c, &in);
        manifest["alpha"] = a;
        write_json(adir / "manifest.json", manifest);
    }
}

void cmd_oracle(const RunConfig& c) {
    const LoadedInput in = load_input(c);
    for (double a : c.alpha) {
        const ExactAccess exact =
            exact_access_oracle(in.graph, TransmissionProbability(a), c.max_edges);
        if (c.output_dir.empty()) {
            if (c.alpha.size() > 1) std::cout << fmt::format("# alpha={}\n", a);
            write_access_csv(std::cout, exact);
            continue;
        }
        const fs::path dir = alpha_dir(c, a);
        auto out = open_output(dir / "access.csv");
        write_access_csv(out, exact);
        const AdvantageVector adv = advantage_vector(exact);
        auto advantage = open_output(dir / "advantage.csv");
        write_advantage_csv(advantage, exact.labels(), adv);
        json manifest = manifest_json(c, &in);
        manifest["alpha"] = a;
        write_json(dir / "manifest.json", manifest);
    }
}

void cmd_stability(const RunConfig& c) {
    const LoadedInput in = load_input(c);
    for (double a : c.alpha) {
        const fs::path dir = alpha_dir(c, a);
        const StabilityReport r = stability_check(in.graph, TransmissionProbability(a),
                                                  c.samples, c.reps, c.seed, {c.workers});
        write_json(dir / "stability.json", {{"alpha", a},
                                            {"samples", c.samples},
                                            {"repetitions", r.repetitions},
                                            {"base_seed", c.seed},
                                            {"max_deviation", r.max_deviation},
                                            {"mean_deviation", r.mean_deviation},
                                            {"mean_pairwise_difference",
                                             r.mean_pairwise_difference}});
        json manifest = manifest_json(c, &in);
        manifest["alpha"] = a;
        write_json(dir / "manifest.json", manifest);
    }
}

void cmd_control(const RunConfig& c) {
    const LoadedInput in = load_input(c);
    const Graph& g = in.graph;
    std::vector<NodeId> targets;
    if (c.nodes.empty()) {
        for (NodeId v = 0; v < g.node_count(); ++v) targets.push_back(v);
    } else {
        for (OriginalId id : c.nodes) {
            const auto v = g.find_node(id);
            if (!v) throw ConfigError(fmt::format("--nodes: node {} is not in the graph", id));
            targets.push_back(*v);
        }
    }
    if (!c.exact) {
        std::cerr << fmt::format(
            "warning: control re-estimates access without each node: {} run(s) of {} samples "
            "on a graph with {} edges\n",
            targets.size(), c.samples, g.edge_count());
    }
    for (double a : c.alpha) {
        const fs::path dir = alpha_dir(c, a);
        const TransmissionProbability alpha(a);
        std::optional<AccessEstimate> full;
        std::optional<ExactAccess> exact;
        AdvantageVector adv;
        if (c.exact) {
            exact = exact_access_oracle(g, alpha, c.max_edges);
            adv = advantage_vector(*exact);
        } else {
            full = estimate_access(g, alpha, c.samples, c.seed, {c.workers});
            adv = advantage_vector(*full);
        }
        std::vector<OriginalId> labels;
        AdvantageVector subset;
        subset.cent_star.emplace();
        subset.max_pair_control.emplace();
        json details = json::array();
        for (NodeId v : targets) {
            const ControlResult r = c.exact ? exact_access_centrality(g, alpha, v)
                                            : access_centrality(g, *full, alpha, c.seed, v,
                                                                {c.workers});
            labels.push_back(g.label(v));
            subset.broadcast.push_back(adv.broadcast[v]);
            subset.influence.push_back(adv.influence[v]);
            subset.cent_star->push_back(r.cent_star);
            subset.max_pair_control->push_back(r.max_pair_control);
            details.push_back({{"node", g.label(v)},
                               {"cent_star", r.cent_star},
                               {"raw_sum", r.raw_sum},
                               {"max_pair_control", r.max_pair_control},
                               {"max_pair", {g.label(r.max_pair_j), g.label(r.max_pair_k)}},
                               {"min_raw_ratio", r.min_raw_ratio},
                               {"eligible_pairs", r.eligible_pairs},
                               {"skipped_pairs", r.skipped_pairs}});
        }
        auto out = open_output(dir / "advantage.csv");
        write_advantage_csv(out, labels, subset);
        write_json(dir / "control.json", {{"alpha", a}, {"nodes", details}});
        json manifest = manifest_json(c, &in);
        manifest["alpha"] = a;
        write_json(dir / "manifest.json", manifest);
    }
}

void add_common(CLI::App* sub, RunConfig& c, bool sampling) {
    sub->add_option("-i,--input", c.input, "Edge list (two integer ids per line, '#' comments)");
    sub->add_option("-a,--alpha", c.alpha, "Transmission probability; a comma list runs each")
        ->delimiter(',');
    sub->add_flag("--no-lcc", c.no_lcc, "Keep the whole graph instead of its largest component");
    sub->add_option("-w,--workers", c.workers, "Worker threads (0 = all cores)")
        ->capture_default_str();
    sub->add_option("-o,--output-dir", c.output_dir, "Output directory");
    if (sampling) {
        sub->add_option("-R,--samples", c.samples, "Live-edge samples per estimate")
            ->capture_default_str();
        sub->add_option("-s,--seed", c.seed, "Run seed")->capture_default_str();
    }
}

void add_signature(CLI::App* sub, RunConfig& c) {
    sub->add_option("--signature-pairs", c.signature_pairs,
                    "Sample this many pairs for signature distances (0 = automatic: all pairs "
                    "up to 2000 nodes, sampled above)")
        ->capture_default_str();
    sub->add_flag("--exact-signatures", c.exact_signatures,
                  "Always compare all signature pairs (O(n^3))");
    sub->add_flag("--raw-distributions", c.raw_distributions,
                  "Also write raw access and signature distance CSVs");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    RunConfig c;
    CLI::App app{"Information access estimation and welfare-maximizing edge augmentation"};
    app.set_config("--config", "", "TOML/INI file with option defaults; flags override it");
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    auto* estimate = app.add_subcommand("estimate", "Estimate pairwise access and advantage");
    add_common(estimate, c, true);
    estimate->add_flag("--binary", c.binary, "Also write access.bin for reuse");

    auto* augment = app.add_subcommand("augment", "Run an edge augmentation heuristic");
    add_common(augment, c, true);
    add_signature(augment, c);
    augment->add_option("-k,--k", c.k, "Edge budget")->capture_default_str();
    augment->add_option("--heuristic", c.heuristic,
                        "rand, bc-chord, bc-one, bc-both, infl, diam-chord, diam-both")
        ->capture_default_str();
    augment->add_option("--eval-every", c.eval_every, "Write a metrics bundle every N steps")
        ->capture_default_str();

    auto* evaluate = app.add_subcommand("evaluate", "Metrics bundle for a graph or stored estimate");
    add_common(evaluate, c, true);
    add_signature(evaluate, c);
    evaluate->add_option("--estimate", c.estimate, "access.bin written by `estimate --binary`");
    evaluate->add_option("--before", c.before, "Metrics bundle before intervention");
    evaluate->add_option("--after", c.after, "Metrics bundle after intervention");

    auto* oracle = app.add_subcommand("oracle", "Exact access by enumerating live-edge subsets");
    add_common(oracle, c, false);
    oracle->add_option("--max-edges", c.max_edges, "Refuse graphs with more edges")
        ->capture_default_str();

    auto* stability = app.add_subcommand("stability", "Spread of estimates over repeated seeds");
    add_common(stability, c, true);
    stability->add_option("--reps", c.reps, "Repetitions (seeds seed..seed+reps-1)")
        ->capture_default_str();

    auto* control = app.add_subcommand(
        "control", "Access centrality per node (one re-estimation per node; expensive)");
    add_common(control, c, true);
    control->add_option("--nodes", c.nodes, "Original node ids (default: all)")->delimiter(',');
    control->add_flag("--exact", c.exact, "Use the enumeration oracle instead of sampling");
    control->add_option("--max-edges", c.max_edges, "Edge cap for --exact")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (auto* sub : app.get_subcommands()) c.command = sub->get_name();

    try {
        validate(c);
        if (c.command == "estimate") cmd_estimate(c);
        if (c.command == "augment") cmd_augment(c);
        if (c.command == "evaluate") cmd_evaluate(c);
        if (c.command == "oracle") cmd_oracle(c);
        if (c.command == "stability") cmd_stability(c);
        if (c.command == "control") cmd_control(c);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"infoaccess"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace infoaccess

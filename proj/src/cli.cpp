#include "pulseforge/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pulseforge/encoding.hpp"
#include "pulseforge/generators.hpp"
#include "pulseforge/json_io.hpp"
#include "pulseforge/model_check.hpp"
#include "pulseforge/sweep.hpp"
#include "pulseforge/symmetry.hpp"
#include "pulseforge/verify.hpp"

namespace pulseforge {

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

TreeTopology load_tree(const std::string& spec)
{
    if (std::filesystem::is_regular_file(spec)) return read_edge_list_file(spec);
    if (auto tree = builtin_tree(spec)) return *tree;
    throw UsageError("'" + spec + "' is neither a readable file nor a builtin tree (pathN, starN, binaryR, c5)");
}

std::uint64_t parse_u64(std::string_view text, const char* what)
{
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw UsageError(std::string("bad ") + what + " '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::uint64_t> parse_ids(const std::string& text)
{
    std::vector<std::uint64_t> ids;
    std::string_view rest = text;
    while (true) {
        const auto comma = rest.find(',');
        ids.push_back(parse_u64(rest.substr(0, comma), "id"));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return ids;
}

Algorithm algorithm_from(const std::string& name)
{
    if (auto alg = parse_algorithm(name)) return *alg;
    throw UsageError("unknown algorithm '" + name + "'");
}

MatchMode match_from(const std::string& name)
{
    if (name == "at-least") return MatchMode::AtLeast;
    if (name == "exact") return MatchMode::Exact;
    throw UsageError("unknown match mode '" + name + "'");
}

// Writes to --out when given, otherwise to the command's stdout.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback)
    {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw UsageError("cannot write '" + path + "'");
        stream_ = file_.get();
    }
    std::ostream& get() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

void print_checks(std::ostream& out, const VerifyReport& report)
{
    for (const auto& row : report.rows) {
        out << (row.passed ? "PASS " : "FAIL ") << row.name << ": " << row.detail << '\n';
    }
}

void print_layers(std::ostream& out, const TreeTopology& tree)
{
    const Layering layering = layer_decomposition(tree);
    const SubtreeIndex index = enumerate_subtrees(tree, layering);
    out << "diameter=" << layering.diameter << " radius=" << layering.radius << " root=" << layering.root
        << " co_root=" << (layering.co_root ? std::to_string(*layering.co_root) : std::string("none"))
        << " root_arbitrary=" << (layering.root_arbitrary ? "true" : "false")
        << " graded=" << (is_layer_graded(layering) ? "true" : "false") << " shapes=" << index.shapes << '\n';
    for (std::size_t i = 0; i < layering.layers.size(); ++i) {
        out << "V" << i << ":";
        for (Vertex v : layering.layers[i]) out << ' ' << v;
        out << '\n';
    }
    out << "vertex layer parent children rank quota\n";
    for (Vertex v = 0; v < tree.size(); ++v) {
        out << v << ' ' << layering.layer_of[v] << ' '
            << (layering.parent_of[v] ? std::to_string(*layering.parent_of[v]) : std::string("-")) << ' ';
        const auto& kids = layering.children_of[v];
        if (kids.empty()) out << '-';
        for (std::size_t i = 0; i < kids.size(); ++i) out << (i ? "," : "") << kids[i];
        out << ' ' << index.rank[v] << ' ' << index.quota(v) << '\n';
    }
    for (std::uint32_t i = 1; i <= index.shapes; ++i) {
        out << 'T' << i << ' ' << index.canon[i - 1] << " representative=" << index.representative[i - 1] << '\n';
    }
}

}  // namespace

int cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Content-oblivious leader election on trees: simulator, rule compiler and model checker",
                 "pulseforge"};
    app.require_subcommand(1);

    std::uint64_t default_seed = 0;
    if (const char* env = std::getenv("PULSEFORGE_SEED")) {
        try {
            default_seed = parse_u64(env, "PULSEFORGE_SEED");
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            return 2;
        }
    }

    std::string tree_spec, alg_name = "general", ids_text, out_path, trace_path, format = "json",
                                   match_name = "at-least", policy = "random";
    std::uint64_t seed = default_seed;
    std::uint64_t budget = 10'000'000;

    auto* run_cmd = app.add_subcommand("run", "Run one simulation and print the outcome as JSON");
    run_cmd->add_option("--tree", tree_spec, "Edge-list file or builtin (pathN, starN, binaryR, c5)")->required();
    run_cmd->add_option("--alg", alg_name, "even | general | stabilizing")->capture_default_str();
    run_cmd->add_option("--seed", seed, "Scheduler seed (default: PULSEFORGE_SEED or 0)");
    run_cmd->add_option("--budget", budget, "Maximum deliveries")->capture_default_str();
    run_cmd->add_option("--ids", ids_text, "Comma-separated IDs (stabilizing only)");
    run_cmd->add_option("--out", out_path, "Write the outcome here instead of stdout");
    run_cmd->add_option("--trace", trace_path, "Write a JSON-lines delivery trace here");
    run_cmd->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));
    run_cmd->add_option("--policy", policy, "random | round-robin")->capture_default_str();
    run_cmd->add_option("--match", match_name, "at-least | exact")->capture_default_str();

    auto* rules_cmd = app.add_subcommand("rules", "Print the compiled rule set");
    rules_cmd->add_option("--tree", tree_spec, "Edge-list file or builtin")->required();
    rules_cmd->add_option("--alg", alg_name, "even | general")->capture_default_str();
    rules_cmd->add_option("--match", match_name, "at-least | exact")->capture_default_str();
    rules_cmd->add_option("--out", out_path, "Output path");

    auto* layers_cmd = app.add_subcommand("layers", "Print the layer decomposition and subtree enumeration");
    layers_cmd->add_option("--tree", tree_spec, "Edge-list file or builtin")->required();
    layers_cmd->add_option("--out", out_path, "Output path");

    auto* sym_cmd = app.add_subcommand("symmetry", "Report whether the tree is symmetric about an edge");
    sym_cmd->add_option("--tree", tree_spec, "Edge-list file or builtin")->required();

    std::size_t max_states = 1'000'000;
    auto* mc_cmd = app.add_subcommand("mc", "Explore every delivery schedule");
    mc_cmd->add_option("--tree", tree_spec, "Edge-list file or builtin")->required();
    mc_cmd->add_option("--alg", alg_name, "even | general | stabilizing")->capture_default_str();
    mc_cmd->add_option("--ids", ids_text, "Comma-separated IDs (stabilizing only)");
    mc_cmd->add_option("--max-states", max_states, "State cap")->capture_default_str();
    mc_cmd->add_option("--match", match_name, "at-least | exact")->capture_default_str();
    mc_cmd->add_option("--out", out_path, "Output path");

    std::string gen_name, n_range, radius_range;
    std::uint64_t seeds = 1;
    bool timing = false;
    bool serial = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "Batch experiments, one verified row per instance");
    sweep_cmd->add_option("--gen", gen_name, "path | star | complete-binary | random | random-asymmetric | mirrored")
        ->required();
    auto* n_opt = sweep_cmd->add_option("--n", n_range, "Size or range a..b");
    auto* r_opt = sweep_cmd->add_option("--radius", radius_range, "Radius or range a..b (complete-binary)");
    n_opt->excludes(r_opt);
    sweep_cmd->add_option("--alg", alg_name, "even | general | stabilizing")->capture_default_str();
    sweep_cmd->add_option("--seeds", seeds, "Seeds per size")->capture_default_str();
    sweep_cmd->add_option("--seed", seed, "First seed (default: PULSEFORGE_SEED or 0)");
    sweep_cmd->add_option("--budget", budget, "Maximum deliveries per run")->capture_default_str();
    sweep_cmd->add_option("--out", out_path, "Output path");
    sweep_cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--match", match_name, "at-least | exact")->capture_default_str();
    sweep_cmd->add_flag("--timing", timing, "Add a wall_time column (not reproducible)");
    sweep_cmd->add_flag("--serial", serial, "Run instances on one thread");

    std::optional<Vertex> root;
    auto* encode_cmd = app.add_subcommand("encode", "Print the parenthesis encoding of a rooted tree");
    encode_cmd->add_option("--tree", tree_spec, "Edge-list file or builtin")->required();
    encode_cmd->add_option("--root", root, "Root vertex (default: the layering root)");

    std::string parens;
    auto* decode_cmd = app.add_subcommand("decode", "Turn a parenthesis encoding into an edge list");
    decode_cmd->add_option("encoding", parens, "e.g. (()())")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        const MatchMode mode = match_from(match_name);
        if (run_cmd->parsed()) {
            const TreeTopology tree = load_tree(tree_spec);
            SimulationConfig config{algorithm_from(alg_name), std::nullopt, mode};
            if (!ids_text.empty()) config.ids = parse_ids(ids_text);
            NetworkState state = new_simulation(tree, config);
            Scheduler::Policy chosen = Scheduler::SeededRandom{seed};
            if (policy == "round-robin") {
                chosen = Scheduler::RoundRobin{};
            } else if (policy != "random") {
                throw UsageError("unknown policy '" + policy + "'");
            }
            Scheduler scheduler(chosen);
            std::vector<TraceEvent> trace;
            const Outcome outcome = run(state, scheduler, budget, [&](const TraceEvent& e) { trace.push_back(e); });
            const auto* ids = config.ids ? &*config.ids : nullptr;
            const VerifyReport report = verify_outcome(outcome, tree, config.algorithm, ids, &trace);
            if (!trace_path.empty()) {
                std::ofstream file(trace_path);
                if (!file) throw UsageError("cannot write '" + trace_path + "'");
                for (const auto& e : trace) file << trace_event_to_json(e).dump() << '\n';
            }
            Json j = outcome_to_json(outcome);
            j["checks"] = checks_to_json(report);
            Sink sink(out_path, out);
            sink.get() << j.dump(2) << '\n';
            if (!report.passed()) print_checks(err, report);
            return report.passed() ? 0 : 1;
        }
        if (rules_cmd->parsed()) {
            const TreeTopology tree = load_tree(tree_spec);
            const Algorithm alg = algorithm_from(alg_name);
            RuleSet rules;
            if (alg == Algorithm::EvenDiameter) {
                const Layering layering = layer_decomposition(tree);
                if (layering.odd()) {
                    throw SimulationError(SimulationErrorKind::OddDiameterForEvenAlgorithm,
                                          "diameter " + std::to_string(layering.diameter));
                }
                rules = compile_even_rules(layering.diameter);
            } else if (alg == Algorithm::GeneralTree) {
                rules = compile_general_rules(tree, mode);
            } else {
                throw UsageError("the stabilizing algorithm has no rule set");
            }
            Sink sink(out_path, out);
            sink.get() << format_rules(rules);
            return 0;
        }
        if (layers_cmd->parsed()) {
            Sink sink(out_path, out);
            print_layers(sink.get(), load_tree(tree_spec));
            return 0;
        }
        if (sym_cmd->parsed()) {
            const SymmetryReport report = is_edge_symmetric(load_tree(tree_spec));
            if (report.symmetric) {
                out << "symmetric edge=" << report.witness_edge->first << '-' << report.witness_edge->second << '\n';
            } else {
                out << "asymmetric\n";
            }
            return 0;
        }
        if (mc_cmd->parsed()) {
            const TreeTopology tree = load_tree(tree_spec);
            const Algorithm alg = algorithm_from(alg_name);
            std::optional<std::vector<std::uint64_t>> ids;
            if (!ids_text.empty()) ids = parse_ids(ids_text);
            if (alg == Algorithm::GeneralTree) compile_general_rules(tree, mode);
            const ModelCheckReport report = explore_all_schedules(tree, alg, ids, {max_states, mode});
            const VerifyReport checks = verify_model_check(report, tree, alg, ids ? &*ids : nullptr);
            Sink sink(out_path, out);
            sink.get() << summarize(report) << '\n';
            print_checks(sink.get(), checks);
            return checks.passed() ? 0 : 1;
        }
        if (sweep_cmd->parsed()) {
            const auto kind = parse_generator_kind(gen_name);
            if (!kind) throw UsageError("unknown generator '" + gen_name + "'");
            if (n_range.empty() && radius_range.empty()) throw UsageError("sweep needs --n or --radius");
            if (!sweep_cmd->count("--format")) format = "csv";
            SweepConfig config;
            config.generator = *kind;
            config.sizes = parse_range(n_range.empty() ? radius_range : n_range);
            config.algorithm = algorithm_from(alg_name);
            config.seeds = seeds;
            config.base_seed = seed;
            config.budget = budget;
            config.match_mode = mode;
            config.execution = serial ? Execution::Serial : Execution::Parallel;
            const ExperimentReport report = run_sweep(config);
            Sink sink(out_path, out);
            if (format == "json") {
                write_json(sink.get(), report, timing);
            } else {
                write_csv(sink.get(), report, timing);
            }
            return report.passed() ? 0 : 1;
        }
        if (encode_cmd->parsed()) {
            const TreeTopology tree = load_tree(tree_spec);
            const Vertex r = root.value_or(layer_decomposition(tree).root);
            if (r >= tree.size()) throw UsageError("root " + std::to_string(r) + " out of range");
            out << encode_parens(tree, r) << '\n';
            return 0;
        }
        if (decode_cmd->parsed()) {
            out << decode_parens(parens).to_edge_list();
            return 0;
        }
    } catch (const StateCapExceeded& e) {
        err << "error: state cap exceeded: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

int cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"pulseforge"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pulseforge

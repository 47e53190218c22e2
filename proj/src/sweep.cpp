#include "pulseforge/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "pulseforge/oracle.hpp"
#include "pulseforge/verify.hpp"

namespace pulseforge {

std::optional<GeneratorKind> parse_generator_kind(std::string_view name)
{
    if (name == "path") return GeneratorKind::Path;
    if (name == "star") return GeneratorKind::Star;
    if (name == "complete-binary" || name == "binary") return GeneratorKind::CompleteBinary;
    if (name == "random") return GeneratorKind::Random;
    if (name == "random-asymmetric") return GeneratorKind::RandomAsymmetric;
    if (name == "mirrored") return GeneratorKind::Mirrored;
    return std::nullopt;
}

const char* to_string(GeneratorKind kind)
{
    switch (kind) {
    case GeneratorKind::Path: return "path";
    case GeneratorKind::Star: return "star";
    case GeneratorKind::CompleteBinary: return "complete-binary";
    case GeneratorKind::Random: return "random";
    case GeneratorKind::RandomAsymmetric: return "random-asymmetric";
    case GeneratorKind::Mirrored: return "mirrored";
    }
    return "?";
}

GeneratorSpec make_spec(GeneratorKind kind, std::size_t size, std::uint64_t seed)
{
    switch (kind) {
    case GeneratorKind::Path: return PathGen{size};
    case GeneratorKind::Star: return StarGen{size};
    case GeneratorKind::CompleteBinary: return CompleteBinaryGen{static_cast<std::uint32_t>(size)};
    case GeneratorKind::Random: return RandomTreeGen{size, seed};
    case GeneratorKind::RandomAsymmetric: return RandomAsymmetricTreeGen{size, seed};
    case GeneratorKind::Mirrored: return MirroredTreeGen{size, seed};
    }
    throw GeneratorError("unknown generator");
}

bool ExperimentReport::passed() const
{
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const ExperimentRow& r) { return r.checks_ok; });
}

ExperimentRow run_instance(const SweepConfig& config, std::size_t size, std::uint64_t seed)
{
    const auto start = std::chrono::steady_clock::now();
    ExperimentRow row;
    row.size = size;
    row.seed = seed;
    row.algorithm = config.algorithm;
    const GeneratorSpec spec = make_spec(config.generator, size, seed);
    row.generator = describe(spec);
    try {
        const TreeTopology tree = generate(spec);
        row.n = tree.size();
        row.diameter = layer_decomposition(tree).diameter;

        SimulationConfig sim{config.algorithm, std::nullopt, config.match_mode};
        if (config.algorithm == Algorithm::Stabilizing) sim.ids = permuted_ids(tree.size(), seed);
        NetworkState state = new_simulation(tree, sim);
        Scheduler scheduler(Scheduler::SeededRandom{seed});
        std::vector<TraceEvent> trace;
        const Outcome outcome =
            run(state, scheduler, config.budget, [&](const TraceEvent& e) { trace.push_back(e); });

        const auto* ids = sim.ids ? &*sim.ids : nullptr;
        const VerifyReport report = verify_outcome(outcome, tree, config.algorithm, ids, &trace);
        row.status = to_string(outcome.status);
        row.pulses = std::accumulate(outcome.sent_per_edge.begin(), outcome.sent_per_edge.end(), std::uint64_t{0});
        row.expected = expected_total(outcome, tree, config.algorithm, ids);
        auto ok = [&](std::string_view name) {
            const CheckRow* r = report.find(name);
            return r && r->passed;
        };
        row.leader_ok = config.algorithm == Algorithm::Stabilizing ? ok("unique_leader")
                                                                   : ok("leader_matches_oracle");
        row.exact_ok = ok("exact_total");
        row.bound_ok = ok("bound");
        row.checks_ok = report.passed();
        for (const auto& r : report.rows) {
            if (r.passed) continue;
            if (!row.failed_checks.empty()) row.failed_checks += ' ';
            row.failed_checks += r.name;
        }
        const std::vector<std::uint64_t>* bound_ids = ids;
        row.bound = TreeOracle(tree, config.algorithm).bound(bound_ids);
    } catch (const Error& e) {
        row.status = std::string("error: ") + e.what();
    }
    row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

ExperimentReport run_sweep(const SweepConfig& config)
{
    std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
    for (std::size_t size : config.sizes) {
        for (std::uint64_t i = 0; i < config.seeds; ++i) jobs.emplace_back(size, config.base_seed + i);
    }
    ExperimentReport report;
    report.rows.resize(jobs.size());
    const auto count = static_cast<std::int64_t>(jobs.size());
    if (config.execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < count; ++i) {
            report.rows[i] = run_instance(config, jobs[i].first, jobs[i].second);
        }
    } else {
        for (std::int64_t i = 0; i < count; ++i) {
            report.rows[i] = run_instance(config, jobs[i].first, jobs[i].second);
        }
    }
    std::sort(report.rows.begin(), report.rows.end(),
              [](const ExperimentRow& a, const ExperimentRow& b) { return a.sort_key() < b.sort_key(); });
    return report;
}

namespace {

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

void write_csv(std::ostream& out, const ExperimentReport& report, bool timing)
{
    out << kSweepCsvVersion << '\n';
    out << "generator,n,D,algorithm,seed,status,leader_ok,pulses,expected,exact_ok,bound,bound_ok,checks_ok";
    if (timing) out << ",wall_time";
    out << '\n';
    for (const auto& r : report.rows) {
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ';');
        out << r.generator << ',' << r.n << ',' << r.diameter << ',' << to_string(r.algorithm) << ',' << r.seed << ','
            << status << ',' << flag(r.leader_ok) << ',' << r.pulses << ',';
        if (r.expected) out << *r.expected;
        out << ',' << flag(r.exact_ok) << ',' << r.bound << ',' << flag(r.bound_ok) << ',' << flag(r.checks_ok);
        if (timing) out << ',' << r.wall_time;
        out << '\n';
    }
}

void write_json(std::ostream& out, const ExperimentReport& report, bool timing)
{
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json j;
        j["generator"] = r.generator;
        j["n"] = r.n;
        j["D"] = r.diameter;
        j["algorithm"] = to_string(r.algorithm);
        j["seed"] = r.seed;
        j["status"] = r.status;
        j["leader_ok"] = r.leader_ok;
        j["pulses"] = r.pulses;
        j["expected"] = r.expected ? nlohmann::ordered_json(*r.expected) : nlohmann::ordered_json(nullptr);
        j["exact_ok"] = r.exact_ok;
        j["bound"] = r.bound;
        j["bound_ok"] = r.bound_ok;
        j["checks_ok"] = r.checks_ok;
        if (!r.failed_checks.empty()) j["failed_checks"] = r.failed_checks;
        if (timing) j["wall_time"] = r.wall_time;
        rows.push_back(std::move(j));
    }
    nlohmann::ordered_json doc;
    doc["schema"] = "pulseforge-sweep v1";
    doc["passed"] = report.passed();
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

std::vector<std::size_t> parse_range(std::string_view text)
{
    auto number = [&](std::string_view s) {
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
            throw Error("bad range '" + std::string(text) + "'");
        }
        return value;
    };
    std::vector<std::size_t> out;
    if (auto dots = text.find(".."); dots != std::string_view::npos) {
        const std::size_t lo = number(text.substr(0, dots));
        const std::size_t hi = number(text.substr(dots + 2));
        if (hi < lo) throw Error("empty range '" + std::string(text) + "'");
        for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    } else {
        out.push_back(number(text));
    }
    return out;
}

}  // namespace pulseforge

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pulseforge/generators.hpp"
#include "pulseforge/network.hpp"

namespace pulseforge {

enum class GeneratorKind { Path, Star, CompleteBinary, Random, RandomAsymmetric, Mirrored };

std::optional<GeneratorKind> parse_generator_kind(std::string_view name);
const char* to_string(GeneratorKind kind);

// Generator for one instance. `size` is n, the radius for complete
// binary trees, or the half size for mirrored trees.
GeneratorSpec make_spec(GeneratorKind kind, std::size_t size, std::uint64_t seed);

enum class Execution { Serial, Parallel };

struct SweepConfig {
    GeneratorKind generator = GeneratorKind::Path;
    std::vector<std::size_t> sizes;
    Algorithm algorithm = Algorithm::GeneralTree;
    std::uint64_t seeds = 1;
    std::uint64_t base_seed = 0;
    std::uint64_t budget = 10'000'000;
    MatchMode match_mode = MatchMode::AtLeast;
    Execution execution = Execution::Parallel;
};

struct ExperimentRow {
    std::string generator;
    std::size_t size = 0;
    std::uint64_t n = 0;
    std::uint32_t diameter = 0;
    Algorithm algorithm = Algorithm::GeneralTree;
    std::uint64_t seed = 0;
    std::string status;
    bool leader_ok = false;
    std::uint64_t pulses = 0;
    std::optional<std::uint64_t> expected;
    bool exact_ok = false;
    std::uint64_t bound = 0;
    bool bound_ok = false;
    bool checks_ok = false;
    std::string failed_checks;
    double wall_time = 0.0;  // seconds; excluded from reproducible output

    auto sort_key() const { return std::tie(size, seed, generator); }
};

struct ExperimentReport {
    std::vector<ExperimentRow> rows;

    bool passed() const;
};

// One instance: generate, simulate with a seeded random scheduler, verify.
// Errors (e.g. a symmetric tree) become a failing row.
ExperimentRow run_instance(const SweepConfig& config, std::size_t size, std::uint64_t seed);

// Rows come back sorted by (size, seed) whatever the execution mode.
ExperimentReport run_sweep(const SweepConfig& config);

inline constexpr const char* kSweepCsvVersion = "# pulseforge-sweep v1";

void write_csv(std::ostream& out, const ExperimentReport& report, bool timing = false);
void write_json(std::ostream& out, const ExperimentReport& report, bool timing = false);

// "3", "1..4" -> list of sizes.
std::vector<std::size_t> parse_range(std::string_view text);

}  // namespace pulseforge

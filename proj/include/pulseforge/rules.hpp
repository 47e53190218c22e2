#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pulseforge/layering.hpp"
#include "pulseforge/tree.hpp"

namespace pulseforge {

enum class MatchMode { AtLeast, Exact };

enum class RuleAlgorithm { EvenDiameter, GeneralTree };

// "d-1 ports have received `trigger` pulses, the remaining port none
//  -> top Port* up to `quota` cumulative sends."
// Degree-agnostic rules (the even-diameter family) carry a uniform
// threshold instead of an explicit trigger list.
struct UpstreamRule {
    std::optional<std::size_t> degree;
    std::vector<std::uint32_t> trigger;  // sorted non-increasing, size degree-1
    std::uint32_t threshold = 0;         // used when degree is unset
    std::uint32_t quota = 0;
    std::uint32_t source_index = 0;

    bool applies_to(std::size_t d) const { return !degree || *degree == d; }
    std::vector<std::uint32_t> trigger_for(std::size_t d) const;
};

enum class LeaderVariant {
    EvenDiameterSimple,  // every port received at least one pulse
    EvenAllPorts,        // all d ports received the trigger counts
    OddRemainingOne,     // d-1 ports received the trigger, the last exactly one
};

struct LeaderRule {
    LeaderVariant variant = LeaderVariant::EvenDiameterSimple;
    std::optional<std::size_t> degree;
    std::vector<std::uint32_t> trigger;  // sorted non-increasing

    bool applies_to(std::size_t d) const { return !degree || *degree == d; }
};

struct RuleSet {
    RuleAlgorithm algorithm = RuleAlgorithm::EvenDiameter;
    std::uint32_t radius = 0;  // even-diameter algorithm
    std::uint32_t shapes = 0;  // general algorithm: number of distinct subtrees
    MatchMode mode = MatchMode::AtLeast;
    std::vector<UpstreamRule> upstream;  // ordered by (degree, source_index)
    LeaderRule leader;

    std::vector<const UpstreamRule*> upstream_for(std::size_t d) const;
    // Largest quota any rule of this degree can demand.
    std::uint32_t max_quota(std::size_t d) const;
};

class SymmetricTreeError : public Error {
public:
    explicit SymmetricTreeError(Edge witness)
        : Error("tree is symmetric about edge {" + std::to_string(witness.first) + "," +
                std::to_string(witness.second) + "}"),
          witness_(witness)
    {
    }
    Edge witness() const noexcept { return witness_; }

private:
    Edge witness_;
};

class RuleCompileError : public Error {
public:
    using Error::Error;
};

RuleSet compile_even_rules(std::uint32_t diameter);

// Throws SymmetricTreeError if the tree is symmetric about an edge.
RuleSet compile_general_rules(const TreeTopology& tree, MatchMode mode = MatchMode::AtLeast);

// Same, reusing an existing decomposition and enumeration.
RuleSet compile_general_rules(const TreeTopology& tree, const Layering& layering, const SubtreeIndex& index,
                              MatchMode mode = MatchMode::AtLeast);

// Finds the "remaining" port: a port whose count equals `remaining_required`
// such that the other d-1 counts can be assigned to the trigger entries
// (componentwise >= after sorting both in AtLeast mode, equal multisets in
// Exact mode). Lowest admissible port wins.
std::optional<Port> match_trigger(std::span<const std::uint32_t> received, std::span<const std::uint32_t> trigger,
                                  std::uint32_t remaining_required, MatchMode mode);

// All ports against a d-entry trigger.
bool match_all_ports(std::span<const std::uint32_t> received, std::span<const std::uint32_t> trigger,
                     MatchMode mode);

// Checks the dominance property among same-degree rules: a trigger that
// dominates another componentwise must carry a strictly larger quota.
// Returns a description of the first violating pair, if any.
std::optional<std::string> find_dominance_violation(const RuleSet& rules);

// One rule per line, stable order, for the `rules` subcommand.
std::string format_rules(const RuleSet& rules);

}  // namespace pulseforge

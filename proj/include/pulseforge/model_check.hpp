#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pulseforge/network.hpp"

namespace pulseforge {

struct ModelCheckCaps {
    std::size_t max_states = 1'000'000;
    MatchMode match_mode = MatchMode::AtLeast;
};

class StateCapExceeded : public Error {
public:
    using Error::Error;
};

// Terminal states that agree on everything observable are grouped.
struct TerminalClass {
    RunStatus status = RunStatus::Terminated;
    std::optional<Vertex> leader;
    std::uint64_t leader_count = 0;
    std::uint64_t total_pulses = 0;
    std::vector<std::uint64_t> sent_per_edge;
    std::uint64_t deliveries_to_halted = 0;
    std::vector<Vertex> election_participants;  // stabilizing only
    std::uint64_t terminal_states = 0;  // how many distinct terminal states fell in this class

    auto tie() const { return std::tie(status, leader, leader_count, total_pulses, sent_per_edge, deliveries_to_halted,
                                    election_participants); }
};

struct ModelCheckReport {
    Algorithm algorithm = Algorithm::GeneralTree;
    std::size_t states = 0;
    std::size_t transitions = 0;
    std::size_t terminal_states = 0;
    std::vector<TerminalClass> classes;

    // Safety counters, each counted over reachable transitions/states.
    std::uint64_t deliveries_to_halted = 0;     // transitions delivering to a halted node
    std::uint64_t direction_violations = 0;     // pre-Leader delivery not child -> parent
    std::uint64_t port_star_violations = 0;     // Port* changed after being set
    std::uint64_t latch_violations = 0;         // decided output changed
    std::uint64_t upstream_cap_violations = 0;  // sent to parent above the subtree cap
    std::uint64_t multi_leader_states = 0;      // states with two or more Leader outputs
    std::optional<std::uint64_t> max_in_flight_at_leader;

    bool divergent() const noexcept { return classes.size() > 1; }
    bool safety_clean() const noexcept
    {
        return direction_violations == 0 && port_star_violations == 0 && latch_violations == 0 &&
               upstream_cap_violations == 0 && multi_leader_states == 0;
    }
};

// Depth-first exploration of every delivery order, memoizing visited states.
// Throws StateCapExceeded once more than caps.max_states states are seen.
ModelCheckReport explore_all_schedules(const TreeTopology& tree, Algorithm algorithm,
                                       const std::optional<std::vector<std::uint64_t>>& ids,
                                       const ModelCheckCaps& caps = {});

std::string summarize(const ModelCheckReport& report);

}  // namespace pulseforge

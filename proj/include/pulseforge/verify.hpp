#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pulseforge/model_check.hpp"
#include "pulseforge/network.hpp"

namespace pulseforge {

struct CheckRow {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckRow> rows;

    bool passed() const;
    const CheckRow* find(std::string_view name) const;
};

// Checks a finished run against the topology oracle. Rows, as applicable:
// status, unique_leader, leader_matches_oracle, exact_total, bound,
// quiescence, upstream_cap, direction (only when a trace is given).
VerifyReport verify_outcome(const Outcome& outcome, const TreeTopology& tree, Algorithm algorithm,
                            const std::vector<std::uint64_t>* ids = nullptr,
                            const std::vector<TraceEvent>* trace = nullptr);

// Deliveries before the first Leader declaration that do not go child to
// parent. Empty means the direction property held.
std::vector<TraceEvent> direction_violations(const TreeTopology& tree, const std::vector<TraceEvent>& trace);

// Total the formula predicts for this outcome: the per-node quota sum for
// the terminating algorithms, n plus the two finalists' IDs for the
// stabilizing one.
std::optional<std::uint64_t> expected_total(const Outcome& outcome, const TreeTopology& tree, Algorithm algorithm,
                                            const std::vector<std::uint64_t>* ids = nullptr);

// Same checks applied to every terminal class of an exhaustive exploration,
// plus the explorer's safety counters. The even and general algorithms must
// collapse to a single class except on ungraded even trees.
VerifyReport verify_model_check(const ModelCheckReport& report, const TreeTopology& tree, Algorithm algorithm,
                                const std::vector<std::uint64_t>* ids = nullptr);

}  // namespace pulseforge

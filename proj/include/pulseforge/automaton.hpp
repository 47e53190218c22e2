#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "pulseforge/rules.hpp"

namespace pulseforge {

enum class Output : std::uint8_t { Undecided, Leader, NonLeader };

const char* to_string(Output output);

// Why a pulse was sent; the simulator keeps per-category totals.
enum class PulseKind : std::uint8_t { Upstream, LeaderDownstream, StabilizingLeaf, Election };

const char* to_string(PulseKind kind);

struct Send {
    Port port = 0;
    std::uint32_t count = 1;
    PulseKind kind = PulseKind::Upstream;
    friend bool operator==(const Send&, const Send&) = default;
};

struct Declare {
    Output output = Output::Undecided;
    friend bool operator==(const Declare&, const Declare&) = default;
};

struct Halt {
    friend bool operator==(const Halt&, const Halt&) = default;
};

using Action = std::variant<Send, Declare, Halt>;

enum class ElectionPhase : std::uint8_t { Idle, Counting };

struct NodeState {
    std::vector<std::uint32_t> received;
    std::vector<std::uint32_t> sent;
    std::optional<Port> port_star;
    bool downstream_active = false;
    bool leader_rule_active = true;
    Output output = Output::Undecided;
    bool halted = false;

    // Stabilizing algorithm only.
    std::uint64_t id = 0;
    bool is_leaf = false;
    std::vector<bool> live;
    ElectionPhase phase = ElectionPhase::Idle;
    std::uint64_t needed = 0;
    std::uint64_t got = 0;

    std::size_t degree() const noexcept { return received.size(); }

    friend bool operator==(const NodeState&, const NodeState&) = default;
};

struct Transition {
    NodeState state;
    std::vector<Action> actions;
};

// Rule-driven automaton shared by the even-diameter and general algorithms.
Transition init_node(std::size_t degree, const RuleSet& rules);
Transition on_deliver(NodeState state, const RuleSet& rules, Port port);

struct Init {};
struct Delivered {
    Port port = 0;
};
using StabilizingEvent = std::variant<Init, Delivered>;

// Leaf-trimming automaton with an edge election at the last edge. `id` must
// be positive. Outputs start as NonLeader; the winner switches to Leader and
// halts, everybody else keeps listening.
NodeState stabilizing_node(std::size_t degree, std::uint64_t id);
Transition stabilizing_step(NodeState state, StabilizingEvent event);

// Appends a compact, fixed-layout encoding of the state (model-checker key).
void append_key(const NodeState& state, std::vector<std::uint64_t>& key);

}  // namespace pulseforge

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "pulseforge/automaton.hpp"
#include "pulseforge/rules.hpp"
#include "pulseforge/tree.hpp"

namespace pulseforge {

enum class Algorithm { EvenDiameter, GeneralTree, Stabilizing };

const char* to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct DirectedEdge {
    Vertex from = 0;
    Vertex to = 0;
    friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

enum class SimulationErrorKind {
    SymmetricTree,
    OddDiameterForEvenAlgorithm,
    DuplicateIds,
    MissingIds,
    InvalidIds,
    NoPulseInFlight,
};

const char* to_string(SimulationErrorKind kind);

class SimulationError : public Error {
public:
    SimulationError(SimulationErrorKind kind, const std::string& what)
        : Error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }
    SimulationErrorKind kind() const noexcept { return kind_; }

private:
    SimulationErrorKind kind_;
};

struct SimulationConfig {
    Algorithm algorithm = Algorithm::GeneralTree;
    std::optional<std::vector<std::uint64_t>> ids;  // required iff Stabilizing
    MatchMode match_mode = MatchMode::AtLeast;
};

struct Metrics {
    std::uint64_t upstream = 0;
    std::uint64_t leader_downstream = 0;
    std::uint64_t stabilizing_leaf = 0;
    std::uint64_t election = 0;
    std::uint64_t deliveries = 0;
    std::uint64_t deliveries_to_halted = 0;
    // In-flight pulses right after the delivery that made a node Leader,
    // before its own broadcast is enqueued.
    std::optional<std::uint64_t> in_flight_at_leader;
    std::uint64_t leader_declarations = 0;

    std::uint64_t total_sent() const noexcept { return upstream + leader_downstream + stabilizing_leaf + election; }
};

struct TraceEvent {
    std::uint64_t step = 0;
    DirectedEdge edge;
    std::uint64_t receiver_state_digest = 0;
    bool receiver_was_halted = false;
    std::vector<Action> actions;
    std::uint64_t in_flight_total = 0;
};

using TraceSink = std::function<void(const TraceEvent&)>;

// All node automata plus one pulse counter per directed edge. Pulses carry
// no content, so an in-flight multiset is fully described by these counts.
class NetworkState {
public:
    const TreeTopology& topology() const noexcept { return *topology_; }
    Algorithm algorithm() const noexcept { return algorithm_; }
    const RuleSet* rules() const noexcept { return rules_.get(); }
    const std::vector<std::uint64_t>& ids() const noexcept { return ids_; }

    const std::vector<NodeState>& nodes() const noexcept { return nodes_; }
    const NodeState& node(Vertex v) const { return nodes_.at(v); }
    const Metrics& metrics() const noexcept { return metrics_; }

    std::size_t directed_edge_count() const noexcept { return in_flight_.size(); }
    std::size_t edge_index(DirectedEdge e) const;
    DirectedEdge edge_at(std::size_t index) const;
    std::uint32_t in_flight(DirectedEdge e) const { return in_flight_[edge_index(e)]; }
    std::uint32_t in_flight_at(std::size_t index) const { return in_flight_[index]; }
    std::uint64_t in_flight_total() const noexcept { return in_flight_total_; }

    // Pulses ever sent along e (read from the sender's counters).
    std::uint64_t sent_on(DirectedEdge e) const;
    std::vector<std::uint64_t> sent_per_edge() const;

    std::uint64_t steps() const noexcept { return metrics_.deliveries; }
    std::optional<std::pair<Vertex, std::uint64_t>> first_quiescence_violation() const noexcept
    {
        return first_violation_;
    }

    // Delivers one pulse on e. Throws SimulationError(NoPulseInFlight).
    TraceEvent deliver(DirectedEdge e);
    TraceEvent deliver_index(std::size_t index);

    // No in-flight pulse targets a node that is still running.
    bool outputs_frozen() const;
    bool all_halted() const;
    std::optional<Vertex> unique_leader() const;

    // Key for state-space memoization.
    std::vector<std::uint64_t> state_key() const;

private:
    friend NetworkState new_simulation(const TreeTopology&, const SimulationConfig&);

    void apply(Vertex v, const std::vector<Action>& actions);

    std::shared_ptr<const TreeTopology> topology_;
    std::shared_ptr<const RuleSet> rules_;
    Algorithm algorithm_ = Algorithm::GeneralTree;
    std::vector<std::uint64_t> ids_;
    std::vector<NodeState> nodes_;
    std::vector<std::size_t> offset_;       // first directed edge index of each vertex
    std::vector<Port> reverse_port_;        // port at the receiver for each directed edge
    std::vector<std::uint32_t> in_flight_;  // index offset_[v] + p: pulses v -> neighbor(v, p)
    std::uint64_t in_flight_total_ = 0;
    Metrics metrics_;
    std::optional<std::pair<Vertex, std::uint64_t>> first_violation_;
};

NetworkState new_simulation(const TreeTopology& tree, const SimulationConfig& config);

// Pure-value form of NetworkState::deliver.
NetworkState step(NetworkState state, DirectedEdge edge);

std::uint64_t state_digest(const NodeState& state);

// Picks which directed edge delivers next.
class Scheduler {
public:
    struct SeededRandom {
        std::uint64_t seed = 0;
    };
    struct RoundRobin {};
    struct AdversaryScript {
        std::vector<DirectedEdge> script;
    };
    using Policy = std::variant<SeededRandom, RoundRobin, AdversaryScript>;

    explicit Scheduler(Policy policy);

    // nullopt when nothing is in flight or the script is exhausted.
    std::optional<DirectedEdge> pick(const NetworkState& state);

    std::uint64_t seed() const noexcept;
    const Policy& policy() const noexcept { return policy_; }

private:
    Policy policy_;
    std::mt19937_64 rng_;
    std::size_t cursor_ = 0;
};

enum class RunStatus { Terminated, Stabilized, BudgetExhausted, QuiescenceViolated, Deadlocked };

const char* to_string(RunStatus status);

struct Outcome {
    RunStatus status = RunStatus::BudgetExhausted;
    std::optional<Vertex> leader;
    std::vector<Output> outputs;
    Metrics metrics;
    std::uint64_t seed = 0;
    std::optional<std::pair<Vertex, std::uint64_t>> quiescence_violation;  // (node, step)
    std::vector<std::uint64_t> sent_per_edge;                               // indexed like NetworkState
    std::vector<Vertex> election_participants;                             // stabilizing only
};

// Delivers pulses until outputs freeze (then drains pulses still headed to
// halted nodes) or `budget` scheduler picks have been made.
Outcome run(NetworkState& state, Scheduler& scheduler, std::uint64_t budget, const TraceSink& trace = {});

}  // namespace pulseforge

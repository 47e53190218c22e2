#include "pulseforge/network.hpp"

#include <algorithm>
#include <set>

#include "pulseforge/layering.hpp"

namespace pulseforge {

const char* to_string(Algorithm algorithm)
{
    switch (algorithm) {
    case Algorithm::EvenDiameter: return "even";
    case Algorithm::GeneralTree: return "general";
    case Algorithm::Stabilizing: return "stabilizing";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name)
{
    if (name == "even") return Algorithm::EvenDiameter;
    if (name == "general") return Algorithm::GeneralTree;
    if (name == "stabilizing") return Algorithm::Stabilizing;
    return std::nullopt;
}

const char* to_string(SimulationErrorKind kind)
{
    switch (kind) {
    case SimulationErrorKind::SymmetricTree: return "SymmetricTree";
    case SimulationErrorKind::OddDiameterForEvenAlgorithm: return "OddDiameterForEvenAlgorithm";
    case SimulationErrorKind::DuplicateIds: return "DuplicateIds";
    case SimulationErrorKind::MissingIds: return "MissingIds";
    case SimulationErrorKind::InvalidIds: return "InvalidIds";
    case SimulationErrorKind::NoPulseInFlight: return "NoPulseInFlight";
    }
    return "?";
}

const char* to_string(RunStatus status)
{
    switch (status) {
    case RunStatus::Terminated: return "Terminated";
    case RunStatus::Stabilized: return "Stabilized";
    case RunStatus::BudgetExhausted: return "BudgetExhausted";
    case RunStatus::QuiescenceViolated: return "QuiescenceViolated";
    case RunStatus::Deadlocked: return "Deadlocked";
    }
    return "?";
}

std::uint64_t state_digest(const NodeState& state)
{
    std::vector<std::uint64_t> key;
    append_key(state, key);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (std::uint64_t word : key) {
        for (int byte = 0; byte < 8; ++byte) {
            hash ^= (word >> (8 * byte)) & 0xffu;
            hash *= 0x100000001b3ull;
        }
    }
    return hash;
}

std::size_t NetworkState::edge_index(DirectedEdge e) const
{
    return offset_.at(e.from) + topology_->port_to(e.from, e.to);
}

DirectedEdge NetworkState::edge_at(std::size_t index) const
{
    auto it = std::upper_bound(offset_.begin(), offset_.end(), index);
    const auto from = static_cast<Vertex>(it - offset_.begin() - 1);
    const auto port = static_cast<Port>(index - offset_[from]);
    return {from, topology_->neighbor(from, port)};
}

std::uint64_t NetworkState::sent_on(DirectedEdge e) const
{
    return nodes_.at(e.from).sent.at(topology_->port_to(e.from, e.to));
}

std::vector<std::uint64_t> NetworkState::sent_per_edge() const
{
    std::vector<std::uint64_t> out;
    out.reserve(in_flight_.size());
    for (const auto& node : nodes_) out.insert(out.end(), node.sent.begin(), node.sent.end());
    return out;
}

bool NetworkState::outputs_frozen() const
{
    for (std::size_t i = 0; i < in_flight_.size(); ++i) {
        if (in_flight_[i] > 0 && !nodes_[edge_at(i).to].halted) return false;
    }
    return true;
}

bool NetworkState::all_halted() const
{
    return std::all_of(nodes_.begin(), nodes_.end(), [](const NodeState& s) { return s.halted; });
}

std::optional<Vertex> NetworkState::unique_leader() const
{
    std::optional<Vertex> leader;
    for (Vertex v = 0; v < nodes_.size(); ++v) {
        if (nodes_[v].output != Output::Leader) continue;
        if (leader) return std::nullopt;
        leader = v;
    }
    return leader;
}

std::vector<std::uint64_t> NetworkState::state_key() const
{
    std::vector<std::uint64_t> key;
    for (const auto& node : nodes_) append_key(node, key);
    key.insert(key.end(), in_flight_.begin(), in_flight_.end());
    return key;
}

void NetworkState::apply(Vertex v, const std::vector<Action>& actions)
{
    for (const auto& action : actions) {
        if (const auto* declare = std::get_if<Declare>(&action); declare && declare->output == Output::Leader) {
            ++metrics_.leader_declarations;
            if (!metrics_.in_flight_at_leader) metrics_.in_flight_at_leader = in_flight_total_;
        }
    }
    for (const auto& action : actions) {
        const auto* send = std::get_if<Send>(&action);
        if (!send) continue;
        in_flight_[offset_[v] + send->port] += send->count;
        in_flight_total_ += send->count;
        switch (send->kind) {
        case PulseKind::Upstream: metrics_.upstream += send->count; break;
        case PulseKind::LeaderDownstream: metrics_.leader_downstream += send->count; break;
        case PulseKind::StabilizingLeaf: metrics_.stabilizing_leaf += send->count; break;
        case PulseKind::Election: metrics_.election += send->count; break;
        }
    }
}

TraceEvent NetworkState::deliver(DirectedEdge e)
{
    return deliver_index(edge_index(e));
}

TraceEvent NetworkState::deliver_index(std::size_t index)
{
    if (index >= in_flight_.size() || in_flight_[index] == 0) {
        const auto e = index < in_flight_.size() ? edge_at(index) : DirectedEdge{};
        throw SimulationError(SimulationErrorKind::NoPulseInFlight,
                              "no pulse on " + std::to_string(e.from) + "->" + std::to_string(e.to));
    }
    const DirectedEdge e = edge_at(index);
    --in_flight_[index];
    --in_flight_total_;
    ++metrics_.deliveries;

    TraceEvent event;
    event.step = metrics_.deliveries;
    event.edge = e;
    NodeState& receiver = nodes_[e.to];
    event.receiver_was_halted = receiver.halted;
    if (receiver.halted) {
        ++metrics_.deliveries_to_halted;
        if (!first_violation_) first_violation_ = {e.to, metrics_.deliveries};
    } else {
        const Port port = reverse_port_[index];
        Transition t = algorithm_ == Algorithm::Stabilizing ? stabilizing_step(std::move(receiver), Delivered{port})
                                                            : on_deliver(std::move(receiver), *rules_, port);
        nodes_[e.to] = std::move(t.state);
        apply(e.to, t.actions);
        event.actions = std::move(t.actions);
    }
    event.receiver_state_digest = state_digest(nodes_[e.to]);
    event.in_flight_total = in_flight_total_;
    return event;
}

NetworkState new_simulation(const TreeTopology& tree, const SimulationConfig& config)
{
    NetworkState state;
    state.topology_ = std::make_shared<const TreeTopology>(tree);
    state.algorithm_ = config.algorithm;
    const std::size_t n = tree.size();

    if (config.algorithm == Algorithm::Stabilizing) {
        if (!config.ids) throw SimulationError(SimulationErrorKind::MissingIds, "the stabilizing algorithm needs ids");
        const auto& ids = *config.ids;
        if (ids.size() != n) {
            throw SimulationError(SimulationErrorKind::InvalidIds,
                                  std::to_string(ids.size()) + " ids for " + std::to_string(n) + " vertices");
        }
        if (std::find(ids.begin(), ids.end(), 0u) != ids.end()) {
            throw SimulationError(SimulationErrorKind::InvalidIds, "ids must be positive");
        }
        if (std::set<std::uint64_t>(ids.begin(), ids.end()).size() != n) {
            throw SimulationError(SimulationErrorKind::DuplicateIds, "ids must be pairwise distinct");
        }
        state.ids_ = ids;
    } else if (config.ids) {
        throw SimulationError(SimulationErrorKind::InvalidIds, "ids only apply to the stabilizing algorithm");
    }

    if (config.algorithm == Algorithm::EvenDiameter) {
        const Layering layering = layer_decomposition(tree);
        if (layering.odd()) {
            throw SimulationError(SimulationErrorKind::OddDiameterForEvenAlgorithm,
                                  "diameter " + std::to_string(layering.diameter) + " is odd");
        }
        auto rules = compile_even_rules(layering.diameter);
        rules.mode = config.match_mode;
        state.rules_ = std::make_shared<const RuleSet>(std::move(rules));
    } else if (config.algorithm == Algorithm::GeneralTree) {
        try {
            state.rules_ = std::make_shared<const RuleSet>(compile_general_rules(tree, config.match_mode));
        } catch (const SymmetricTreeError& error) {
            throw SimulationError(SimulationErrorKind::SymmetricTree, error.what());
        }
    }

    state.offset_.resize(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) state.offset_[v + 1] = state.offset_[v] + tree.degree(v);
    state.in_flight_.assign(state.offset_[n], 0);
    state.reverse_port_.resize(state.offset_[n]);
    for (Vertex v = 0; v < n; ++v) {
        for (Port p = 0; p < tree.degree(v); ++p) {
            state.reverse_port_[state.offset_[v] + p] = tree.port_to(tree.neighbor(v, p), v);
        }
    }

    state.nodes_.reserve(n);
    std::vector<std::vector<Action>> init_actions(n);
    for (Vertex v = 0; v < n; ++v) {
        Transition t = config.algorithm == Algorithm::Stabilizing
                           ? stabilizing_step(stabilizing_node(tree.degree(v), state.ids_[v]), Init{})
                           : init_node(tree.degree(v), *state.rules_);
        state.nodes_.push_back(std::move(t.state));
        init_actions[v] = std::move(t.actions);
    }
    for (Vertex v = 0; v < n; ++v) state.apply(v, init_actions[v]);
    return state;
}

NetworkState step(NetworkState state, DirectedEdge edge)
{
    state.deliver(edge);
    return state;
}

Scheduler::Scheduler(Policy policy) : policy_(std::move(policy))
{
    if (const auto* random = std::get_if<SeededRandom>(&policy_)) rng_.seed(random->seed);
}

std::uint64_t Scheduler::seed() const noexcept
{
    if (const auto* random = std::get_if<SeededRandom>(&policy_)) return random->seed;
    return 0;
}

std::optional<DirectedEdge> Scheduler::pick(const NetworkState& state)
{
    if (const auto* script = std::get_if<AdversaryScript>(&policy_)) {
        if (cursor_ >= script->script.size()) return std::nullopt;
        return script->script[cursor_++];
    }
    const std::size_t m = state.directed_edge_count();
    if (std::holds_alternative<RoundRobin>(policy_)) {
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t index = (cursor_ + i) % m;
            if (state.in_flight_at(index) > 0) {
                cursor_ = index + 1;
                return state.edge_at(index);
            }
        }
        return std::nullopt;
    }
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < m; ++i) {
        if (state.in_flight_at(i) > 0) candidates.push_back(i);
    }
    if (candidates.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> choose(0, candidates.size() - 1);
    return state.edge_at(candidates[choose(rng_)]);
}

namespace {

Outcome snapshot(const NetworkState& state, RunStatus status, std::uint64_t seed)
{
    Outcome out;
    out.status = status;
    out.leader = state.unique_leader();
    out.metrics = state.metrics();
    out.seed = seed;
    out.quiescence_violation = state.first_quiescence_violation();
    out.sent_per_edge = state.sent_per_edge();
    for (Vertex v = 0; v < state.nodes().size(); ++v) {
        out.outputs.push_back(state.node(v).output);
        if (state.node(v).phase == ElectionPhase::Counting) out.election_participants.push_back(v);
    }
    return out;
}

}  // namespace

Outcome run(NetworkState& state, Scheduler& scheduler, std::uint64_t budget, const TraceSink& trace)
{
    std::uint64_t picks = 0;
    while (!state.outputs_frozen()) {
        if (picks >= budget) return snapshot(state, RunStatus::BudgetExhausted, scheduler.seed());
        auto edge = scheduler.pick(state);
        if (!edge) return snapshot(state, RunStatus::BudgetExhausted, scheduler.seed());
        TraceEvent event = state.deliver(*edge);
        ++picks;
        if (trace) trace(event);
    }
    // Whatever is still in flight targets halted nodes and is absorbed.
    for (std::size_t i = 0; i < state.directed_edge_count(); ++i) {
        while (state.in_flight_at(i) > 0) {
            TraceEvent event = state.deliver_index(i);
            if (trace) trace(event);
        }
    }

    RunStatus status = RunStatus::Deadlocked;
    if (state.all_halted()) {
        status = state.algorithm() == Algorithm::GeneralTree && state.first_quiescence_violation()
                     ? RunStatus::QuiescenceViolated
                     : RunStatus::Terminated;
    } else if (state.algorithm() == Algorithm::Stabilizing) {
        status = RunStatus::Stabilized;
    }
    return snapshot(state, status, scheduler.seed());
}

}  // namespace pulseforge

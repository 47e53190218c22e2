#include "pulseforge/model_check.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "pulseforge/oracle.hpp"

namespace pulseforge {

namespace {

struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& key) const noexcept
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::uint64_t word : key) {
            h ^= word + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

bool any_leader(const NetworkState& s)
{
    return std::any_of(s.nodes().begin(), s.nodes().end(),
                       [](const NodeState& node) { return node.output == Output::Leader; });
}

TerminalClass classify(const NetworkState& s)
{
    TerminalClass c;
    c.sent_per_edge = s.sent_per_edge();
    c.total_pulses = std::accumulate(c.sent_per_edge.begin(), c.sent_per_edge.end(), std::uint64_t{0});
    std::uint64_t received = 0;
    for (const auto& node : s.nodes()) {
        received += std::accumulate(node.received.begin(), node.received.end(), std::uint64_t{0});
        if (node.output == Output::Leader) ++c.leader_count;
    }
    for (Vertex v = 0; v < s.nodes().size(); ++v) {
        if (s.node(v).phase == ElectionPhase::Counting) c.election_participants.push_back(v);
    }
    c.deliveries_to_halted = c.total_pulses - received;
    c.leader = s.unique_leader();
    if (s.all_halted()) {
        c.status = s.algorithm() == Algorithm::GeneralTree && c.deliveries_to_halted > 0 ? RunStatus::QuiescenceViolated
                                                                                          : RunStatus::Terminated;
    } else {
        c.status = s.algorithm() == Algorithm::Stabilizing ? RunStatus::Stabilized : RunStatus::Deadlocked;
    }
    return c;
}

}  // namespace

ModelCheckReport explore_all_schedules(const TreeTopology& tree, Algorithm algorithm,
                                       const std::optional<std::vector<std::uint64_t>>& ids, const ModelCheckCaps& caps)
{
    SimulationConfig config{algorithm, ids, caps.match_mode};
    NetworkState initial = new_simulation(tree, config);
    const bool terminating = algorithm != Algorithm::Stabilizing;
    std::optional<TreeOracle> oracle;
    if (terminating) oracle.emplace(tree, algorithm);

    ModelCheckReport report;
    report.algorithm = algorithm;
    std::unordered_set<std::vector<std::uint64_t>, KeyHash> visited;
    std::vector<NetworkState> stack;
    visited.insert(initial.state_key());
    stack.push_back(std::move(initial));

    auto record_terminal = [&](const NetworkState& s) {
        ++report.terminal_states;
        TerminalClass c = classify(s);
        auto it = std::find_if(report.classes.begin(), report.classes.end(),
                               [&](const TerminalClass& known) { return known.tie() == c.tie(); });
        if (it == report.classes.end()) {
            c.terminal_states = 1;
            report.classes.push_back(std::move(c));
        } else {
            ++it->terminal_states;
        }
    };

    while (!stack.empty()) {
        NetworkState current = std::move(stack.back());
        stack.pop_back();
        ++report.states;
        if (std::count_if(current.nodes().begin(), current.nodes().end(),
                          [](const NodeState& node) { return node.output == Output::Leader; }) > 1) {
            ++report.multi_leader_states;
        }
        if (current.in_flight_total() == 0) {
            record_terminal(current);
            continue;
        }

        const bool before_leader = !any_leader(current);
        for (std::size_t i = 0; i < current.directed_edge_count(); ++i) {
            if (current.in_flight_at(i) == 0) continue;
            NetworkState next = current;
            const TraceEvent event = next.deliver_index(i);
            ++report.transitions;
            const Vertex to = event.edge.to;
            const NodeState& before = current.node(to);
            const NodeState& after = next.node(to);

            if (event.receiver_was_halted) ++report.deliveries_to_halted;
            if (before.port_star && before.port_star != after.port_star) ++report.port_star_violations;
            if (terminating) {
                if (before_leader && !oracle->is_child_to_parent(event.edge)) ++report.direction_violations;
                if (before.output != Output::Undecided && before.output != after.output) ++report.latch_violations;
                if (auto cap = oracle->upstream_cap(to)) {
                    const auto parent = *oracle->layering().parent_of[to];
                    if (next.sent_on({to, parent}) > *cap) ++report.upstream_cap_violations;
                }
            }
            for (const auto& action : event.actions) {
                const auto* declare = std::get_if<Declare>(&action);
                if (!declare || declare->output != Output::Leader) continue;
                std::uint64_t own = 0;
                for (const auto& a : event.actions) {
                    if (const auto* send = std::get_if<Send>(&a)) own += send->count;
                }
                const std::uint64_t pending = event.in_flight_total - own;
                report.max_in_flight_at_leader = std::max(report.max_in_flight_at_leader.value_or(0), pending);
            }

            if (visited.insert(next.state_key()).second) {
                if (visited.size() > caps.max_states) {
                    throw StateCapExceeded("more than " + std::to_string(caps.max_states) + " reachable states");
                }
                stack.push_back(std::move(next));
            }
        }
    }

    std::sort(report.classes.begin(), report.classes.end(),
              [](const TerminalClass& a, const TerminalClass& b) { return a.tie() < b.tie(); });
    return report;
}

std::string summarize(const ModelCheckReport& report)
{
    std::ostringstream out;
    out << report.classes.size() << " terminal class" << (report.classes.size() == 1 ? "" : "es");
    for (const auto& c : report.classes) {
        out << "; status=" << to_string(c.status) << ", leader=";
        if (c.leader) {
            out << *c.leader;
        } else {
            out << "none";
        }
        out << ", pulses=" << c.total_pulses << ", deliveries_to_halted=" << c.deliveries_to_halted;
    }
    out << " (" << report.states << " states, " << report.transitions << " transitions)";
    return out.str();
}

}  // namespace pulseforge

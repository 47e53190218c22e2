#include "pulseforge/automaton.hpp"

#include <algorithm>

namespace pulseforge {

const char* to_string(Output output)
{
    switch (output) {
    case Output::Undecided: return "Undecided";
    case Output::Leader: return "Leader";
    case Output::NonLeader: return "NonLeader";
    }
    return "?";
}

const char* to_string(PulseKind kind)
{
    switch (kind) {
    case PulseKind::Upstream: return "upstream";
    case PulseKind::LeaderDownstream: return "leader-downstream";
    case PulseKind::StabilizingLeaf: return "stabilizing-leaf";
    case PulseKind::Election: return "election";
    }
    return "?";
}

namespace {

void broadcast(Transition& t, std::optional<Port> except, Output decision)
{
    for (Port p = 0; p < t.state.degree(); ++p) {
        if (p == except) continue;
        t.state.sent[p] += 1;
        t.actions.push_back(Send{p, 1, PulseKind::LeaderDownstream});
    }
    t.state.output = decision;
    t.state.halted = true;
    t.actions.push_back(Declare{decision});
    t.actions.push_back(Halt{});
}

bool leader_matches(const NodeState& s, const RuleSet& rules)
{
    const LeaderRule& rule = rules.leader;
    if (!rule.applies_to(s.degree())) return false;
    switch (rule.variant) {
    case LeaderVariant::EvenDiameterSimple:
        return std::all_of(s.received.begin(), s.received.end(), [](std::uint32_t c) { return c >= 1; });
    case LeaderVariant::EvenAllPorts:
        return match_all_ports(s.received, rule.trigger, rules.mode);
    case LeaderVariant::OddRemainingOne:
        return match_trigger(s.received, rule.trigger, 1, rules.mode).has_value();
    }
    return false;
}

// Remaining port for `trigger`, pinned to Port* once that is chosen.
std::optional<Port> upstream_match(const NodeState& s, std::span<const std::uint32_t> trigger, MatchMode mode)
{
    if (!s.port_star) return match_trigger(s.received, trigger, 0, mode);
    const Port star = *s.port_star;
    if (s.received[star] != 0) return std::nullopt;
    // Once fixed, Port* is the only admissible remaining port.
    std::vector<std::uint32_t> others;
    for (Port q = 0; q < s.degree(); ++q) {
        if (q != star) others.push_back(s.received[q]);
    }
    std::vector<std::uint32_t> wanted(trigger.begin(), trigger.end());
    std::sort(others.begin(), others.end(), std::greater<>());
    std::sort(wanted.begin(), wanted.end(), std::greater<>());
    if (others.size() != wanted.size()) return std::nullopt;
    bool ok = mode == MatchMode::Exact
                  ? others == wanted
                  : std::equal(others.begin(), others.end(), wanted.begin(), std::greater_equal<>());
    return ok ? std::optional<Port>(star) : std::nullopt;
}

void evaluate(Transition& t, const RuleSet& rules)
{
    NodeState& s = t.state;
    if (s.leader_rule_active && leader_matches(s, rules)) {
        broadcast(t, std::nullopt, Output::Leader);
        return;
    }

    std::optional<Port> remaining;
    std::uint32_t quota = 0;
    for (const UpstreamRule* rule : rules.upstream_for(s.degree())) {
        auto trigger = rule->trigger_for(s.degree());
        auto port = upstream_match(s, trigger, rules.mode);
        if (!port) continue;
        if (!remaining || rule->quota > quota || (rule->quota == quota && *port < *remaining)) {
            remaining = port;
            quota = rule->quota;
        }
    }
    if (!remaining) return;

    if (!s.port_star) s.port_star = remaining;
    s.downstream_active = true;
    s.leader_rule_active = false;
    const Port star = *s.port_star;
    if (quota > s.sent[star]) {
        t.actions.push_back(Send{star, quota - s.sent[star], PulseKind::Upstream});
        s.sent[star] = quota;
    }
}

}  // namespace

Transition init_node(std::size_t degree, const RuleSet& rules)
{
    Transition t;
    t.state.received.assign(degree, 0);
    t.state.sent.assign(degree, 0);
    evaluate(t, rules);
    return t;
}

Transition on_deliver(NodeState state, const RuleSet& rules, Port port)
{
    Transition t{std::move(state), {}};
    NodeState& s = t.state;
    if (s.halted) return t;
    s.received.at(port) += 1;
    if (s.downstream_active && s.port_star == port) {
        broadcast(t, port, Output::NonLeader);
        return t;
    }
    evaluate(t, rules);
    return t;
}

NodeState stabilizing_node(std::size_t degree, std::uint64_t id)
{
    NodeState s;
    s.received.assign(degree, 0);
    s.sent.assign(degree, 0);
    s.live.assign(degree, true);
    s.id = id;
    s.leader_rule_active = false;
    s.output = Output::NonLeader;
    return s;
}

namespace {

std::optional<Port> sole_live_port(const NodeState& s)
{
    std::optional<Port> found;
    for (Port p = 0; p < s.live.size(); ++p) {
        if (!s.live[p]) continue;
        if (found) return std::nullopt;
        found = p;
    }
    return found;
}

void send_on(Transition& t, Port port, std::uint64_t count, PulseKind kind)
{
    t.state.sent[port] += static_cast<std::uint32_t>(count);
    t.actions.push_back(Send{port, static_cast<std::uint32_t>(count), kind});
}

void become_leaf_if_ready(Transition& t)
{
    NodeState& s = t.state;
    if (s.is_leaf) return;
    if (auto port = sole_live_port(s)) {
        send_on(t, *port, 1, PulseKind::StabilizingLeaf);
        s.is_leaf = true;
    }
}

}  // namespace

Transition stabilizing_step(NodeState state, StabilizingEvent event)
{
    Transition t{std::move(state), {}};
    NodeState& s = t.state;
    if (s.halted) return t;

    if (std::holds_alternative<Init>(event)) {
        if (s.degree() == 0) {
            s.output = Output::Leader;
            s.halted = true;
            t.actions.push_back(Declare{Output::Leader});
            t.actions.push_back(Halt{});
            return t;
        }
        become_leaf_if_ready(t);
        return t;
    }

    const Port port = std::get<Delivered>(event).port;
    s.received.at(port) += 1;
    if (!s.is_leaf) {
        s.live[port] = false;
        become_leaf_if_ready(t);
    } else if (s.phase == ElectionPhase::Idle) {
        s.phase = ElectionPhase::Counting;
        s.needed = s.id;
        s.got = 0;
        send_on(t, *sole_live_port(s), s.id, PulseKind::Election);
    } else if (++s.got == s.needed) {
        s.output = Output::Leader;
        s.halted = true;
        t.actions.push_back(Declare{Output::Leader});
        t.actions.push_back(Halt{});
    }
    return t;
}

void append_key(const NodeState& s, std::vector<std::uint64_t>& key)
{
    key.push_back(s.degree());
    key.insert(key.end(), s.received.begin(), s.received.end());
    key.insert(key.end(), s.sent.begin(), s.sent.end());
    std::uint64_t flags = (s.port_star ? (std::uint64_t{*s.port_star} + 1) : 0) << 8;
    flags |= (s.downstream_active ? 1u : 0u) | (s.leader_rule_active ? 2u : 0u) | (s.halted ? 4u : 0u) |
             (s.is_leaf ? 8u : 0u) | (static_cast<std::uint64_t>(s.output) << 4) |
             (static_cast<std::uint64_t>(s.phase) << 6);
    key.push_back(flags);
    std::uint64_t live_bits = 0;
    for (std::size_t p = 0; p < s.live.size() && p < 64; ++p) {
        if (s.live[p]) live_bits |= std::uint64_t{1} << p;
    }
    key.push_back(live_bits);
    key.push_back(s.got);
}

}  // namespace pulseforge

#include "pulseforge/rules.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "pulseforge/symmetry.hpp"

namespace pulseforge {

std::vector<std::uint32_t> UpstreamRule::trigger_for(std::size_t d) const
{
    if (degree) return trigger;
    return std::vector<std::uint32_t>(d == 0 ? 0 : d - 1, threshold);
}

std::vector<const UpstreamRule*> RuleSet::upstream_for(std::size_t d) const
{
    std::vector<const UpstreamRule*> out;
    for (const auto& rule : upstream) {
        if (rule.applies_to(d)) out.push_back(&rule);
    }
    return out;
}

std::uint32_t RuleSet::max_quota(std::size_t d) const
{
    std::uint32_t best = 0;
    for (const auto* rule : upstream_for(d)) best = std::max(best, rule->quota);
    return best;
}

RuleSet compile_even_rules(std::uint32_t diameter)
{
    if (diameter % 2 != 0) throw RuleCompileError("odd diameter " + std::to_string(diameter) + " for the even-diameter algorithm");
    RuleSet rules;
    rules.algorithm = RuleAlgorithm::EvenDiameter;
    rules.radius = diameter / 2;
    for (std::uint32_t i = 1; i <= rules.radius; ++i) {
        UpstreamRule rule;
        rule.threshold = i + 1;
        rule.quota = i;
        rule.source_index = i;
        rules.upstream.push_back(std::move(rule));
    }
    rules.leader.variant = LeaderVariant::EvenDiameterSimple;
    return rules;
}

RuleSet compile_general_rules(const TreeTopology& tree, MatchMode mode)
{
    if (auto report = is_edge_symmetric(tree); report.symmetric) throw SymmetricTreeError(*report.witness_edge);
    Layering layering = layer_decomposition(tree);
    SubtreeIndex index = enumerate_subtrees(tree, layering);
    return compile_general_rules(tree, layering, index, mode);
}

RuleSet compile_general_rules(const TreeTopology& tree, const Layering& layering, const SubtreeIndex& index,
                              MatchMode mode)
{
    if (layering.root_arbitrary) {
        auto report = is_edge_symmetric(tree);
        throw SymmetricTreeError(report.witness_edge.value_or(Edge{layering.root, *layering.co_root}));
    }

    auto child_quotas = [&](Vertex v) {
        std::vector<std::uint32_t> values;
        for (Vertex c : layering.subtree_children(v)) values.push_back(index.quota(c));
        std::sort(values.begin(), values.end(), std::greater<>());
        return values;
    };

    RuleSet rules;
    rules.algorithm = RuleAlgorithm::GeneralTree;
    rules.radius = layering.radius;
    rules.shapes = index.shapes;
    rules.mode = mode;
    for (std::uint32_t i = 1; i + 1 <= index.shapes; ++i) {
        const Vertex rep = index.representative[i - 1];
        UpstreamRule rule;
        rule.trigger = child_quotas(rep);
        rule.degree = rule.trigger.size() + 1;
        rule.quota = index.quota_for_rank(i);
        rule.source_index = i;
        rules.upstream.push_back(std::move(rule));
    }
    std::stable_sort(rules.upstream.begin(), rules.upstream.end(),
                     [](const UpstreamRule& a, const UpstreamRule& b) { return *a.degree < *b.degree; });

    const Vertex root = index.representative[index.shapes - 1];
    rules.leader.trigger = child_quotas(root);
    rules.leader.degree = tree.degree(root);
    rules.leader.variant = layering.odd() ? LeaderVariant::OddRemainingOne : LeaderVariant::EvenAllPorts;

    if (auto violation = find_dominance_violation(rules)) {
        throw RuleCompileError("upstream rules are not well-defined: " + *violation);
    }
    return rules;
}

std::optional<Port> match_trigger(std::span<const std::uint32_t> received, std::span<const std::uint32_t> trigger,
                                  std::uint32_t remaining_required, MatchMode mode)
{
    if (received.empty() || trigger.size() + 1 != received.size()) return std::nullopt;
    std::vector<std::uint32_t> wanted(trigger.begin(), trigger.end());
    std::sort(wanted.begin(), wanted.end(), std::greater<>());
    std::vector<std::uint32_t> others;
    others.reserve(trigger.size());
    for (Port p = 0; p < received.size(); ++p) {
        if (received[p] != remaining_required) continue;
        others.clear();
        for (Port q = 0; q < received.size(); ++q) {
            if (q != p) others.push_back(received[q]);
        }
        std::sort(others.begin(), others.end(), std::greater<>());
        bool ok = mode == MatchMode::Exact ? others == wanted
                                           : std::equal(others.begin(), others.end(), wanted.begin(),
                                                        std::greater_equal<>());
        if (ok) return p;
    }
    return std::nullopt;
}

bool match_all_ports(std::span<const std::uint32_t> received, std::span<const std::uint32_t> trigger, MatchMode mode)
{
    if (received.size() != trigger.size()) return false;
    std::vector<std::uint32_t> have(received.begin(), received.end());
    std::vector<std::uint32_t> wanted(trigger.begin(), trigger.end());
    std::sort(have.begin(), have.end(), std::greater<>());
    std::sort(wanted.begin(), wanted.end(), std::greater<>());
    if (mode == MatchMode::Exact) return have == wanted;
    return std::equal(have.begin(), have.end(), wanted.begin(), std::greater_equal<>());
}

std::optional<std::string> find_dominance_violation(const RuleSet& rules)
{
    auto dominates = [](const UpstreamRule& a, const UpstreamRule& b) {
        if (!a.degree) return a.threshold >= b.threshold;
        return std::equal(a.trigger.begin(), a.trigger.end(), b.trigger.begin(), std::greater_equal<>());
    };
    for (std::size_t i = 0; i < rules.upstream.size(); ++i) {
        for (std::size_t j = 0; j < rules.upstream.size(); ++j) {
            const auto& a = rules.upstream[i];
            const auto& b = rules.upstream[j];
            if (i == j || a.degree != b.degree) continue;
            if (dominates(a, b) && a.quota <= b.quota) {
                return "rule from T_" + std::to_string(a.source_index) + " dominates rule from T_" +
                       std::to_string(b.source_index) + " but quota " + std::to_string(a.quota) +
                       " <= " + std::to_string(b.quota);
            }
        }
    }
    return std::nullopt;
}

namespace {

std::string list(const std::vector<std::uint32_t>& values)
{
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out + "]";
}

const char* to_string(LeaderVariant variant)
{
    switch (variant) {
    case LeaderVariant::EvenDiameterSimple: return "even-simple";
    case LeaderVariant::EvenAllPorts: return "even-all-ports";
    case LeaderVariant::OddRemainingOne: return "odd-remaining-one";
    }
    return "?";
}

}  // namespace

std::string format_rules(const RuleSet& rules)
{
    std::ostringstream out;
    const char* mode = rules.mode == MatchMode::AtLeast ? "at-least" : "exact";
    if (rules.algorithm == RuleAlgorithm::EvenDiameter) {
        out << "# algorithm=even r=" << rules.radius << " mode=" << mode << '\n';
    } else {
        out << "# algorithm=general shapes=" << rules.shapes << " r=" << rules.radius << " mode=" << mode << '\n';
    }
    for (const auto& rule : rules.upstream) {
        if (rule.degree) {
            out << "upstream degree=" << *rule.degree << " trigger=" << list(rule.trigger);
        } else {
            out << "upstream degree=* trigger=each>=" << rule.threshold;
        }
        out << " quota=" << rule.quota << " source=" << rule.source_index << '\n';
    }
    out << "leader variant=" << to_string(rules.leader.variant);
    if (rules.leader.variant == LeaderVariant::EvenDiameterSimple) {
        out << " degree=* trigger=each>=1\n";
    } else {
        out << " degree=" << rules.leader.degree.value_or(0) << " trigger=" << list(rules.leader.trigger);
        if (rules.leader.variant == LeaderVariant::OddRemainingOne) out << " remaining=1";
        out << '\n';
    }
    out << "downstream on=port-star send=1-per-other-port declare=non-leader halt\n";
    return out.str();
}

}  // namespace pulseforge

#include "pulseforge/verify.hpp"

#include <algorithm>
#include <numeric>

#include "pulseforge/oracle.hpp"

namespace pulseforge {

bool VerifyReport::passed() const
{
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow& row) { return row.passed; });
}

const CheckRow* VerifyReport::find(std::string_view name) const
{
    auto it = std::find_if(rows.begin(), rows.end(), [&](const CheckRow& row) { return row.name == name; });
    return it == rows.end() ? nullptr : &*it;
}

namespace {

bool declares_leader(const TraceEvent& event)
{
    return std::any_of(event.actions.begin(), event.actions.end(), [](const Action& a) {
        const auto* declare = std::get_if<Declare>(&a);
        return declare && declare->output == Output::Leader;
    });
}

std::uint64_t total_pulses(const Outcome& outcome)
{
    return std::accumulate(outcome.sent_per_edge.begin(), outcome.sent_per_edge.end(), std::uint64_t{0});
}

}  // namespace

std::vector<TraceEvent> direction_violations(const TreeTopology& tree, const std::vector<TraceEvent>& trace)
{
    const Layering layering = layer_decomposition(tree);
    std::vector<TraceEvent> bad;
    for (const auto& event : trace) {
        if (layering.parent_of.at(event.edge.from) != event.edge.to) bad.push_back(event);
        if (declares_leader(event)) break;
    }
    return bad;
}

std::optional<std::uint64_t> expected_total(const Outcome& outcome, const TreeTopology& tree, Algorithm algorithm,
                                            const std::vector<std::uint64_t>* ids)
{
    if (algorithm != Algorithm::Stabilizing) {
        if (algorithm == Algorithm::GeneralTree && layer_decomposition(tree).root_arbitrary) return std::nullopt;
        return TreeOracle(tree, algorithm).exact_total();
    }
    if (tree.size() == 1) return 0;
    if (!ids || ids->size() != tree.size()) return std::nullopt;
    std::uint64_t total = tree.size();
    for (Vertex v : outcome.election_participants) total += (*ids)[v];
    return total;
}

VerifyReport verify_outcome(const Outcome& outcome, const TreeTopology& tree, Algorithm algorithm,
                            const std::vector<std::uint64_t>* ids, const std::vector<TraceEvent>* trace)
{
    VerifyReport report;
    auto add = [&](std::string name, bool ok, std::string detail) {
        report.rows.push_back({std::move(name), ok, std::move(detail)});
    };
    const bool terminating = algorithm != Algorithm::Stabilizing;
    const std::uint64_t total = total_pulses(outcome);

    if (terminating) {
        add("status", outcome.status == RunStatus::Terminated, to_string(outcome.status));
    } else {
        const bool ok = outcome.status == RunStatus::Stabilized || outcome.status == RunStatus::Terminated;
        add("status", ok, to_string(outcome.status));
    }

    const auto leaders = std::count(outcome.outputs.begin(), outcome.outputs.end(), Output::Leader);
    add("unique_leader", leaders == 1 && outcome.metrics.leader_declarations == 1,
        std::to_string(leaders) + " leader(s), " + std::to_string(outcome.metrics.leader_declarations) +
            " declaration(s)");

    const TreeOracle oracle(tree, algorithm);
    if (terminating) {
        std::optional<Vertex> expected;
        std::string why;
        try {
            expected = oracle.expected_leader();
        } catch (const SymmetricTreeError& e) {
            why = e.what();
        }
        if (expected) {
            const bool ok = outcome.leader == expected;
            add("leader_matches_oracle", ok,
                "expected " + std::to_string(*expected) + ", got " +
                    (outcome.leader ? std::to_string(*outcome.leader) : std::string("none")));
        } else {
            add("leader_matches_oracle", false, why);
        }
    }

    if (auto formula = expected_total(outcome, tree, algorithm, ids)) {
        // Off graded trees the even leader may fire before a deep node has
        // sent its whole quota, so the formula is only a ceiling there.
        const bool ceiling_only = algorithm == Algorithm::EvenDiameter && !is_layer_graded(oracle.layering());
        const bool ok = ceiling_only ? total <= *formula : total == *formula;
        add("exact_total", ok,
            "expected " + std::string(ceiling_only ? "<= " : "") + std::to_string(*formula) + ", got " +
                std::to_string(total));
    } else if (!terminating) {
        add("exact_total", false, "ids missing");
    }

    if (!terminating && (!ids || ids->size() != tree.size())) {
        add("bound", false, "ids missing");
    } else {
        const std::uint64_t bound = oracle.bound(ids);
        add("bound", total <= bound, std::to_string(total) + " <= " + std::to_string(bound));
    }

    if (algorithm == Algorithm::GeneralTree) {
        const auto pending = outcome.metrics.in_flight_at_leader;
        const bool ok = outcome.metrics.deliveries_to_halted == 0 && pending.value_or(1) == 0;
        add("quiescence", ok,
            "deliveries_to_halted=" + std::to_string(outcome.metrics.deliveries_to_halted) + ", in_flight_at_leader=" +
                (pending ? std::to_string(*pending) : std::string("n/a")));
    }

    if (terminating && !outcome.sent_per_edge.empty()) {
        const Layering& layering = oracle.layering();
        std::uint64_t offset = 0;
        std::uint64_t violations = 0;
        std::string first;
        for (Vertex v = 0; v < tree.size(); ++v) {
            if (auto cap = oracle.upstream_cap(v)) {
                const Port p = tree.port_to(v, *layering.parent_of[v]);
                const std::uint64_t sent = outcome.sent_per_edge.at(offset + p);
                if (sent > *cap) {
                    if (violations++ == 0) {
                        first = "vertex " + std::to_string(v) + " sent " + std::to_string(sent) + " > " +
                                std::to_string(*cap);
                    }
                }
            }
            offset += tree.degree(v);
        }
        add("upstream_cap", violations == 0, violations == 0 ? "ok" : first);
    }

    if (trace && terminating) {
        const auto bad = direction_violations(tree, *trace);
        add("direction", bad.empty(),
            bad.empty() ? "ok"
                        : std::to_string(bad.size()) + " violation(s), first at step " + std::to_string(bad[0].step));
    }
    return report;
}

VerifyReport verify_model_check(const ModelCheckReport& report, const TreeTopology& tree, Algorithm algorithm,
                                const std::vector<std::uint64_t>* ids)
{
    VerifyReport out;
    auto add = [&](std::string name, bool ok, std::string detail) {
        out.rows.push_back({std::move(name), ok, std::move(detail)});
    };
    const TreeOracle oracle(tree, algorithm);
    const bool terminating = algorithm != Algorithm::Stabilizing;
    const bool graded = is_layer_graded(oracle.layering());

    add("safety", report.safety_clean(),
        "direction=" + std::to_string(report.direction_violations) +
            " port_star=" + std::to_string(report.port_star_violations) +
            " latch=" + std::to_string(report.latch_violations) +
            " upstream_cap=" + std::to_string(report.upstream_cap_violations) +
            " multi_leader=" + std::to_string(report.multi_leader_states));

    std::uint64_t wrong_status = 0;
    std::uint64_t not_unique = 0;
    for (const auto& c : report.classes) {
        if (terminating ? c.status != RunStatus::Terminated
                        : c.status != RunStatus::Stabilized && c.status != RunStatus::Terminated) {
            ++wrong_status;
        }
        if (c.leader_count != 1) ++not_unique;
    }
    add("status", wrong_status == 0 && !report.classes.empty(),
        std::to_string(wrong_status) + " of " + std::to_string(report.classes.size()) + " class(es) off");
    add("unique_leader", not_unique == 0, std::to_string(not_unique) + " class(es) without exactly one leader");

    if (terminating) {
        if (algorithm == Algorithm::GeneralTree || graded) {
            add("single_class", report.classes.size() == 1, std::to_string(report.classes.size()) + " class(es)");
        }
        std::optional<Vertex> expected;
        std::string why;
        try {
            expected = oracle.expected_leader();
        } catch (const SymmetricTreeError& e) {
            why = e.what();
        }
        const bool leader_ok = expected && std::all_of(report.classes.begin(), report.classes.end(),
                                                       [&](const TerminalClass& c) { return c.leader == expected; });
        add("leader_matches_oracle", leader_ok, expected ? "expected " + std::to_string(*expected) : why);

        const std::uint64_t formula = oracle.exact_total();
        const bool ceiling_only = algorithm == Algorithm::EvenDiameter && !graded;
        const bool total_ok = std::all_of(report.classes.begin(), report.classes.end(), [&](const TerminalClass& c) {
            return ceiling_only ? c.total_pulses <= formula : c.total_pulses == formula;
        });
        add("exact_total", total_ok && expected.has_value(),
            "expected " + std::string(ceiling_only ? "<= " : "") + std::to_string(formula));
    } else if (ids && ids->size() == tree.size()) {
        const bool total_ok = std::all_of(report.classes.begin(), report.classes.end(), [&](const TerminalClass& c) {
            std::uint64_t want = tree.size() == 1 ? 0 : tree.size();
            if (tree.size() > 1) {
                for (Vertex v : c.election_participants) want += (*ids)[v];
            }
            return c.total_pulses == want;
        });
        add("exact_total", total_ok, "n + IDs of the final pair");
    }

    if (terminating || (ids && ids->size() == tree.size())) {
        const std::uint64_t bound = oracle.bound(ids);
        const bool ok = std::all_of(report.classes.begin(), report.classes.end(),
                                    [&](const TerminalClass& c) { return c.total_pulses <= bound; });
        add("bound", ok, "<= " + std::to_string(bound));
    }

    if (algorithm == Algorithm::GeneralTree) {
        const bool ok = report.deliveries_to_halted == 0 && report.max_in_flight_at_leader.value_or(1) == 0;
        add("quiescence", ok,
            "deliveries_to_halted=" + std::to_string(report.deliveries_to_halted) + ", max_in_flight_at_leader=" +
                (report.max_in_flight_at_leader ? std::to_string(*report.max_in_flight_at_leader)
                                                : std::string("n/a")));
    }
    return out;
}

}  // namespace pulseforge

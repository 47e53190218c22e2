#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pulseforge/automaton.hpp"
#include "pulseforge/layering.hpp"
#include "pulseforge/rules.hpp"
#include "pulseforge/symmetry.hpp"

using namespace pulseforge;

namespace {

std::vector<Send> sends_of(const Transition& t)
{
    std::vector<Send> out;
    for (const auto& a : t.actions) {
        if (const auto* s = std::get_if<Send>(&a)) out.push_back(*s);
    }
    return out;
}

bool declared(const Transition& t, Output o)
{
    for (const auto& a : t.actions) {
        if (const auto* d = std::get_if<Declare>(&a); d && d->output == o) return true;
    }
    return false;
}

Transition feed(const RuleSet& rules, std::size_t degree, const std::vector<Port>& ports)
{
    Transition t = init_node(degree, rules);
    for (Port p : ports) t = on_deliver(t.state, rules, p);
    return t;
}

}  // namespace

TEST_SUITE("rules")
{
    TEST_CASE("match_trigger examples")
    {
        using V = std::vector<std::uint32_t>;
        CHECK(match_trigger(V{2, 2, 0}, V{2, 2}, 0, MatchMode::AtLeast) == Port{2});
        CHECK_FALSE(match_trigger(V{3, 0, 0}, V{2, 2}, 0, MatchMode::AtLeast));
        CHECK(match_trigger(V{2, 2, 1}, V{2, 2}, 1, MatchMode::AtLeast) == Port{2});
        CHECK(match_trigger(V{3, 2, 0}, V{2, 2}, 0, MatchMode::AtLeast) == Port{2});
        CHECK_FALSE(match_trigger(V{3, 2, 0}, V{2, 2}, 0, MatchMode::Exact));
        CHECK(match_trigger(V{2, 0, 2}, V{2, 2}, 0, MatchMode::Exact) == Port{1});
        // ambiguous: either zero port could be the remaining one
        CHECK(match_trigger(V{0, 0}, V{0}, 0, MatchMode::AtLeast) == Port{0});
        CHECK(match_trigger(V{0}, V{}, 0, MatchMode::AtLeast) == Port{0});
        CHECK(match_all_ports(V{1, 1}, V{1, 1}, MatchMode::AtLeast));
        CHECK_FALSE(match_all_ports(V{1, 0}, V{1, 1}, MatchMode::AtLeast));
    }

    TEST_CASE("even rules")
    {
        const RuleSet d2 = compile_even_rules(2);
        CHECK(d2.radius == 1);
        REQUIRE(d2.upstream.size() == 1);
        CHECK(d2.upstream[0].threshold == 2);
        CHECK(d2.upstream[0].quota == 1);
        CHECK(d2.leader.variant == LeaderVariant::EvenDiameterSimple);

        const RuleSet d4 = compile_even_rules(4);
        CHECK(d4.upstream.size() == 2);
        CHECK(d4.max_quota(1) == 2);
        CHECK(d4.upstream[1].threshold == 3);

        CHECK(compile_even_rules(0).upstream.empty());
        CHECK_THROWS_AS(compile_even_rules(3), RuleCompileError);
    }

    TEST_CASE("general rules for C5")
    {
        const RuleSet rules = compile_general_rules(caterpillar_c5());
        CHECK(rules.shapes == 3);
        REQUIRE(rules.upstream.size() == 2);
        CHECK(rules.upstream[0].degree == std::size_t{1});
        CHECK(rules.upstream[0].quota == 2);
        CHECK(rules.upstream[1].degree == std::size_t{2});
        CHECK(rules.upstream[1].trigger == std::vector<std::uint32_t>{2});
        CHECK(rules.upstream[1].quota == 1);
        CHECK(rules.leader.variant == LeaderVariant::OddRemainingOne);
        CHECK(rules.leader.degree == std::size_t{3});
        CHECK(rules.leader.trigger == std::vector<std::uint32_t>{2, 2});
    }

    TEST_CASE("general rules for P3")
    {
        const RuleSet rules = compile_general_rules(testutil::path(3));
        CHECK(rules.shapes == 2);
        REQUIRE(rules.upstream.size() == 1);
        CHECK(rules.upstream[0].quota == 1);
        CHECK(rules.leader.variant == LeaderVariant::EvenAllPorts);
        CHECK(rules.leader.trigger == std::vector<std::uint32_t>{1, 1});
    }

    TEST_CASE("symmetric trees are rejected with a witness")
    {
        try {
            compile_general_rules(testutil::path(4));
            FAIL("expected SymmetricTreeError");
        } catch (const SymmetricTreeError& e) {
            CHECK(e.witness() == Edge{1, 2});
        }
        CHECK_THROWS_AS(compile_general_rules(testutil::path(2)), SymmetricTreeError);
    }

    TEST_CASE("one upstream rule per non-final subtree and dominance holds")
    {
        std::mt19937_64 rng(31);
        int compiled = 0;
        for (int trial = 0; trial < 300; ++trial) {
            const auto t = random_tree(3 + rng() % 20, rng);
            if (is_edge_symmetric(t).symmetric) continue;
            const RuleSet rules = compile_general_rules(t);
            const auto index = enumerate_subtrees(t, layer_decomposition(t));
            CHECK(rules.upstream.size() == index.shapes - 1);
            CHECK_FALSE(find_dominance_violation(rules));
            for (const auto& rule : rules.upstream) CHECK(rule.quota >= 1);
            ++compiled;
        }
        CHECK(compiled > 100);
    }

    TEST_CASE("dominance checker catches a bad pair")
    {
        RuleSet rules = compile_general_rules(caterpillar_c5());
        UpstreamRule extra;
        extra.degree = 2;
        extra.trigger = {3};
        extra.quota = 1;
        extra.source_index = 9;
        rules.upstream.push_back(extra);
        CHECK(find_dominance_violation(rules));
    }

    TEST_CASE("golden listing")
    {
        CHECK(format_rules(compile_general_rules(caterpillar_c5())) ==
              "# algorithm=general shapes=3 r=1 mode=at-least\n"
              "upstream degree=1 trigger=[] quota=2 source=1\n"
              "upstream degree=2 trigger=[2] quota=1 source=2\n"
              "leader variant=odd-remaining-one degree=3 trigger=[2,2] remaining=1\n"
              "downstream on=port-star send=1-per-other-port declare=non-leader halt\n");
        CHECK(format_rules(compile_even_rules(2)) ==
              "# algorithm=even r=1 mode=at-least\n"
              "upstream degree=* trigger=each>=2 quota=1 source=1\n"
              "leader variant=even-simple degree=* trigger=each>=1\n"
              "downstream on=port-star send=1-per-other-port declare=non-leader halt\n");
    }
}

TEST_SUITE("automaton")
{
    TEST_CASE("even init: leaves send r at once")
    {
        const auto t = init_node(1, compile_even_rules(4));
        const auto s = sends_of(t);
        REQUIRE(s.size() == 1);
        CHECK(s[0].port == 0);
        CHECK(s[0].count == 2);
        CHECK(t.state.port_star == Port{0});
        CHECK(init_node(3, compile_even_rules(4)).actions.empty());
    }

    TEST_CASE("single node declares Leader at init")
    {
        const auto t = init_node(0, compile_even_rules(0));
        CHECK(declared(t, Output::Leader));
        CHECK(t.state.halted);
    }

    TEST_CASE("even D=2 degree-2 node fires upstream on [2,0]")
    {
        const auto t = feed(compile_even_rules(2), 2, {0, 0});
        const auto s = sends_of(t);
        REQUIRE(s.size() == 1);
        CHECK(s[0].port == 1);
        CHECK(s[0].count == 1);
        CHECK(t.state.port_star == Port{1});
        CHECK(t.state.downstream_active);
        CHECK_FALSE(t.state.leader_rule_active);
    }

    TEST_CASE("general C5 leader fires on [2,2,1]")
    {
        const RuleSet rules = compile_general_rules(caterpillar_c5());
        auto t = feed(rules, 3, {0, 0, 1, 1});
        CHECK(t.actions.empty());
        CHECK(t.state.received == std::vector<std::uint32_t>{2, 2, 0});
        t = on_deliver(t.state, rules, 2);
        CHECK(declared(t, Output::Leader));
        CHECK(sends_of(t).size() == 3);
        CHECK(t.state.halted);
    }

    TEST_CASE("general C5 leaf sends shapes-1 at init")
    {
        const auto s = sends_of(init_node(1, compile_general_rules(caterpillar_c5())));
        REQUIRE(s.size() == 1);
        CHECK(s[0].count == 2);
    }

    TEST_CASE("downstream: pulse on Port* broadcasts and halts")
    {
        const RuleSet rules = compile_even_rules(4);
        auto t = feed(rules, 3, {0, 0, 0, 1, 1, 1});
        REQUIRE(t.state.port_star == Port{2});
        t = on_deliver(t.state, rules, 2);
        const auto s = sends_of(t);
        REQUIRE(s.size() == 2);
        CHECK(s[0].port == 0);
        CHECK(s[1].port == 1);
        CHECK(declared(t, Output::NonLeader));
        CHECK(t.state.halted);
    }

    TEST_CASE("sends top up as larger quotas match")
    {
        const RuleSet rules = compile_even_rules(6);
        auto t = init_node(2, rules);
        for (int i = 0; i < 4; ++i) t = on_deliver(t.state, rules, 0);
        CHECK(t.state.sent[1] == 3);
        t = on_deliver(t.state, rules, 0);
        CHECK(t.state.sent[1] == 3);
        CHECK(t.state.port_star == Port{1});
    }

    TEST_CASE("halted node ignores deliveries")
    {
        const RuleSet rules = compile_even_rules(2);
        auto t = feed(rules, 2, {0, 0, 1});
        REQUIRE(t.state.halted);
        const auto before = t.state;
        t = on_deliver(t.state, rules, 0);
        CHECK(t.actions.empty());
        CHECK(t.state.output == before.output);
        CHECK(t.state.sent == before.sent);
    }

    TEST_CASE("stabilizing P2 trace")
    {
        auto a = stabilizing_step(stabilizing_node(1, 3), Init{});
        auto b = stabilizing_step(stabilizing_node(1, 5), Init{});
        CHECK(a.state.output == Output::NonLeader);
        CHECK(a.state.is_leaf);
        REQUIRE(sends_of(a).size() == 1);
        a = stabilizing_step(a.state, Delivered{0});
        CHECK(sends_of(a)[0].count == 3);
        b = stabilizing_step(b.state, Delivered{0});
        CHECK(sends_of(b)[0].count == 5);
        for (int i = 0; i < 2; ++i) a = stabilizing_step(a.state, Delivered{0});
        CHECK_FALSE(a.state.halted);
        a = stabilizing_step(a.state, Delivered{0});
        CHECK(declared(a, Output::Leader));
        CHECK(a.state.halted);
        for (int i = 0; i < 3; ++i) b = stabilizing_step(b.state, Delivered{0});
        CHECK_FALSE(b.state.halted);
        CHECK(b.state.output == Output::NonLeader);
    }

    TEST_CASE("stabilizing interior node shrinks its live set")
    {
        auto t = stabilizing_step(stabilizing_node(3, 7), Init{});
        CHECK(t.actions.empty());
        t = stabilizing_step(t.state, Delivered{0});
        CHECK(t.actions.empty());
        CHECK_FALSE(t.state.is_leaf);
        t = stabilizing_step(t.state, Delivered{2});
        const auto s = sends_of(t);
        REQUIRE(s.size() == 1);
        CHECK(s[0].port == 1);
        CHECK(s[0].count == 1);
        CHECK(t.state.is_leaf);
    }

    TEST_CASE("stabilizing isolated node wins at init")
    {
        const auto t = stabilizing_step(stabilizing_node(0, 4), Init{});
        CHECK(declared(t, Output::Leader));
    }
}

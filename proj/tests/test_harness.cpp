#include <doctest.h>

#include <set>
#include <sstream>

#include "helpers.hpp"
#include "oracles.hpp"
#include "pulseforge/json_io.hpp"
#include "pulseforge/oracle.hpp"
#include "pulseforge/sweep.hpp"
#include "pulseforge/symmetry.hpp"
#include "pulseforge/verify.hpp"

using namespace pulseforge;

namespace {

Outcome simulate(const TreeTopology& t, Algorithm alg, std::uint64_t seed,
                 std::optional<std::vector<std::uint64_t>> ids = std::nullopt, std::vector<TraceEvent>* trace = nullptr)
{
    NetworkState s = new_simulation(t, {alg, std::move(ids)});
    Scheduler sch(Scheduler::SeededRandom{seed});
    return run(s, sch, 1'000'000, [&](const TraceEvent& e) {
        if (trace) trace->push_back(e);
    });
}

}  // namespace

TEST_SUITE("generators")
{
    TEST_CASE("structured generators")
    {
        CHECK(generate(PathGen{5}) == testutil::path(5));
        const auto bin = generate(CompleteBinaryGen{2});
        CHECK(bin.size() == 7);
        CHECK(ref::diameter(bin) == 4);
        const auto star = generate(StarGen{6});
        CHECK(star.degree(0) == 5);
        CHECK(generate(CompleteBinaryGen{0}).size() == 1);
        CHECK_THROWS_AS(generate(PathGen{0}), GeneratorError);
    }

    TEST_CASE("random generators are deterministic per seed")
    {
        CHECK(generate(RandomTreeGen{20, 5}) == generate(RandomTreeGen{20, 5}));
        CHECK_FALSE(generate(RandomTreeGen{20, 5}) == generate(RandomTreeGen{20, 6}));
    }

    TEST_CASE("asymmetric generator never returns a symmetric tree")
    {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const auto t = generate(RandomAsymmetricTreeGen{3 + seed % 12, seed});
            CHECK_FALSE(is_edge_symmetric(t).symmetric);
            CHECK_NOTHROW(compile_general_rules(t));
        }
        CHECK_THROWS_AS(generate(RandomAsymmetricTreeGen{2, 1}), GeneratorError);
    }

    TEST_CASE("Prufer trees cover all labeled trees on 4 vertices")
    {
        std::mt19937_64 rng(1);
        std::set<std::vector<Edge>> seen;
        for (int i = 0; i < 2000; ++i) seen.insert(random_tree(4, rng).edges());
        CHECK(seen.size() == 16);
    }

    TEST_CASE("permuted ids")
    {
        auto ids = permuted_ids(10, 3);
        CHECK(ids == permuted_ids(10, 3));
        std::sort(ids.begin(), ids.end());
        for (std::uint64_t i = 0; i < 10; ++i) CHECK(ids[i] == i + 1);
    }

    TEST_CASE("builtins")
    {
        CHECK(builtin_tree("path3") == testutil::path(3));
        CHECK(builtin_tree("p4") == testutil::path(4));
        CHECK(builtin_tree("binary2")->size() == 7);
        CHECK(builtin_tree("star4")->size() == 4);
        CHECK(builtin_tree("c5") == caterpillar_c5());
        CHECK_FALSE(builtin_tree("nonsense"));
        CHECK_FALSE(builtin_tree("path"));
        CHECK(describe(RandomTreeGen{4, 9}) == "random(4;9)");
    }
}

TEST_SUITE("oracle")
{
    TEST_CASE("expected leaders")
    {
        CHECK(oracle_expected_leader(testutil::path(5)) == 2);
        CHECK(oracle_expected_leader(testutil::path(3)) == 1);
        CHECK(oracle_expected_leader(caterpillar_c5()) == 2);
        CHECK_THROWS_AS(oracle_expected_leader(testutil::path(4)), SymmetricTreeError);
    }

    TEST_CASE("exact totals match the independent oracle")
    {
        CHECK(TreeOracle(generate(CompleteBinaryGen{2}), Algorithm::EvenDiameter).exact_total() == 16);
        CHECK(TreeOracle(testutil::path(3), Algorithm::EvenDiameter).exact_total() == 4);
        CHECK(TreeOracle(caterpillar_c5(), Algorithm::GeneralTree).exact_total() == 11);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto t = generate(RandomAsymmetricTreeGen{3 + seed % 12, seed});
            CHECK(TreeOracle(t, Algorithm::GeneralTree).exact_total() == ref::general_total(t));
            CHECK(oracle_expected_leader(t) == ref::root(t));
        }
    }

    TEST_CASE("bounds")
    {
        CHECK(TreeOracle(generate(CompleteBinaryGen{2}), Algorithm::EvenDiameter).bound() == 18);
        CHECK(TreeOracle(caterpillar_c5(), Algorithm::GeneralTree).bound() == 20);
        const std::vector<std::uint64_t> ids{3, 5};
        CHECK(TreeOracle(testutil::path(2), Algorithm::Stabilizing).bound(&ids) == 11);
    }
}

TEST_SUITE("verify")
{
    TEST_CASE("complete binary radius 2 passes everything")
    {
        const auto t = generate(CompleteBinaryGen{2});
        std::vector<TraceEvent> trace;
        const Outcome o = simulate(t, Algorithm::EvenDiameter, 8, std::nullopt, &trace);
        const auto report = verify_outcome(o, t, Algorithm::EvenDiameter, nullptr, &trace);
        CHECK(report.passed());
        CHECK(report.find("direction"));
        CHECK(report.find("exact_total")->detail == "expected 16, got 16");
    }

    TEST_CASE("negative control: C5 with 12 pulses fails the exact check")
    {
        const auto t = caterpillar_c5();
        Outcome o = simulate(t, Algorithm::GeneralTree, 2);
        REQUIRE(verify_outcome(o, t, Algorithm::GeneralTree).passed());
        o.sent_per_edge[0] += 1;
        const auto report = verify_outcome(o, t, Algorithm::GeneralTree);
        CHECK_FALSE(report.passed());
        CHECK_FALSE(report.find("exact_total")->passed);
        CHECK(report.find("exact_total")->detail == "expected 11, got 12");
    }

    TEST_CASE("stabilizing P2 ids {3,5}")
    {
        const std::vector<std::uint64_t> ids{3, 5};
        const auto t = testutil::path(2);
        const Outcome o = simulate(t, Algorithm::Stabilizing, 0, ids);
        const auto report = verify_outcome(o, t, Algorithm::Stabilizing, &ids);
        CHECK(report.passed());
        CHECK(report.find("bound")->detail == "10 <= 11");
    }

    TEST_CASE("wrong leader and extra leader are caught")
    {
        const auto t = testutil::path(3);
        Outcome o = simulate(t, Algorithm::EvenDiameter, 0);
        o.leader = Vertex{0};
        CHECK_FALSE(verify_outcome(o, t, Algorithm::EvenDiameter).find("leader_matches_oracle")->passed);
        o.outputs[0] = Output::Leader;
        CHECK_FALSE(verify_outcome(o, t, Algorithm::EvenDiameter).find("unique_leader")->passed);
    }

    TEST_CASE("direction replay flags a parent-to-child delivery")
    {
        const auto t = testutil::path(3);
        std::vector<TraceEvent> trace(1);
        trace[0].edge = {1, 0};
        CHECK(direction_violations(t, trace).size() == 1);
        trace[0].edge = {0, 1};
        CHECK(direction_violations(t, trace).empty());
    }

    TEST_CASE("ungraded even tree: formula is a ceiling and can be undershot")
    {
        const auto t = testutil::ungraded_spider();
        const std::uint64_t formula = ref::even_total(t);
        bool under = false;
        for (std::uint64_t seed = 0; seed < 500; ++seed) {
            const Outcome o = simulate(t, Algorithm::EvenDiameter, seed);
            const auto report = verify_outcome(o, t, Algorithm::EvenDiameter);
            CHECK(report.passed());
            under = under || o.metrics.total_sent() < formula;
        }
        CHECK(under);
    }

    TEST_CASE("verify's formula equals simulator metrics on passing general runs")
    {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto t = generate(RandomAsymmetricTreeGen{4 + seed % 9, seed});
            const Outcome o = simulate(t, Algorithm::GeneralTree, seed);
            const auto report = verify_outcome(o, t, Algorithm::GeneralTree);
            REQUIRE(report.passed());
            CHECK(expected_total(o, t, Algorithm::GeneralTree) == o.metrics.total_sent());
        }
    }
}

TEST_SUITE("sweep")
{
    TEST_CASE("complete-binary even sweep passes and is reproducible")
    {
        SweepConfig config;
        config.generator = GeneratorKind::CompleteBinary;
        config.sizes = {1, 2, 3};
        config.algorithm = Algorithm::EvenDiameter;
        config.seeds = 20;
        const auto a = run_sweep(config);
        CHECK(a.rows.size() == 60);
        CHECK(a.passed());
        for (const auto& row : a.rows) CHECK(row.bound_ok);
        config.execution = Execution::Serial;
        const auto b = run_sweep(config);
        std::ostringstream ca, cb;
        write_csv(ca, a);
        write_csv(cb, b);
        CHECK(ca.str() == cb.str());
        CHECK(ca.str().rfind("# pulseforge-sweep v1\ngenerator,n,D,algorithm,seed,", 0) == 0);
    }

    TEST_CASE("stabilizing sweep uses permuted ids and the 3n-1 bound")
    {
        SweepConfig config;
        config.generator = GeneratorKind::Random;
        config.sizes = {5};
        config.algorithm = Algorithm::Stabilizing;
        config.seeds = 10;
        const auto report = run_sweep(config);
        CHECK(report.passed());
        for (const auto& row : report.rows) CHECK(row.bound == 14);
    }

    TEST_CASE("errors become failing rows")
    {
        SweepConfig config;
        config.generator = GeneratorKind::Mirrored;
        config.sizes = {3};
        config.algorithm = Algorithm::GeneralTree;
        const auto report = run_sweep(config);
        REQUIRE(report.rows.size() == 1);
        CHECK_FALSE(report.passed());
        CHECK(report.rows[0].status.find("SymmetricTree") != std::string::npos);
    }

    TEST_CASE("ranges")
    {
        CHECK(parse_range("3") == std::vector<std::size_t>{3});
        CHECK(parse_range("1..3") == std::vector<std::size_t>{1, 2, 3});
        CHECK_THROWS_AS(parse_range("3..1"), Error);
        CHECK_THROWS_AS(parse_range("a..b"), Error);
    }
}

TEST_SUITE("json_io")
{
    TEST_CASE("outcome keys in fixed order")
    {
        const Outcome o = simulate(testutil::path(3), Algorithm::EvenDiameter, 0);
        const Json j = outcome_to_json(o);
        std::vector<std::string> keys;
        for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
        CHECK(keys == std::vector<std::string>{"status", "leader", "outputs", "pulses_by_category", "deliveries",
                                               "deliveries_to_halted", "seed"});
        CHECK(j["pulses_by_category"]["total"] == 4);
        CHECK(j["leader"] == 1);
    }

    TEST_CASE("trace line shape")
    {
        TraceEvent e;
        e.step = 3;
        e.edge = {0, 1};
        e.actions = {Send{1, 2, PulseKind::Upstream}, Declare{Output::Leader}, Halt{}};
        e.in_flight_total = 5;
        CHECK(trace_event_to_json(e).dump() ==
              R"({"step":3,"edge":[0,1],"receiver_state_digest":0,"actions":[{"send":{"port":1,"count":2,)"
              R"("kind":"upstream"}},{"declare":"Leader"},"halt"],"in_flight_total":5})");
    }
}

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "pulseforge/tree.hpp"

using namespace pulseforge;

TEST_SUITE("topology")
{
    TEST_CASE("parse simple path and ports follow first appearance")
    {
        const auto t = parse_edge_list("0 1\n1 2\n");
        CHECK(t.size() == 3);
        CHECK(t.degree(1) == 2);
        CHECK(t.neighbor(1, 0) == 0);
        CHECK(t.neighbor(1, 1) == 2);
        CHECK(t.port_to(1, 2) == 1);
        CHECK(t.max_degree() == 2);
    }

    TEST_CASE("empty input is a single vertex")
    {
        const auto t = parse_edge_list("");
        CHECK(t.size() == 1);
        CHECK(t.degree(0) == 0);
        CHECK(t == TreeTopology::single_vertex());
    }

    TEST_CASE("rejects malformed inputs")
    {
        auto kind_of = [](const std::string& text) {
            try {
                parse_edge_list(text);
            } catch (const TopologyError& e) {
                return e.kind();
            }
            FAIL("expected a TopologyError");
            return TopologyErrorKind::BadToken;
        };
        CHECK(kind_of("0 1\n1 2\n2 0\n") == TopologyErrorKind::Cycle);
        CHECK(kind_of("0 1\n2 3\n") == TopologyErrorKind::Disconnected);
        CHECK(kind_of("0 1\n1 0\n") == TopologyErrorKind::DuplicateEdge);
        CHECK(kind_of("0 x\n") == TopologyErrorKind::BadToken);
        CHECK(kind_of("0 1\n2\n") == TopologyErrorKind::DanglingToken);
        CHECK(kind_of("1 1\n") == TopologyErrorKind::Cycle);
    }

    TEST_CASE("edges are sorted pairs")
    {
        const auto t = parse_edge_list("2 1\n0 1\n");
        const std::vector<Edge> want{{0, 1}, {1, 2}};
        CHECK(t.edges() == want);
    }

    TEST_CASE("to_edge_list round-trips including ports")
    {
        const auto t = parse_edge_list("3 1\n1 2\n0 1\n3 4\n2 5\n");
        CHECK(parse_edge_list(t.to_edge_list()) == t);
        const auto single = TreeTopology::single_vertex();
        CHECK(parse_edge_list(single.to_edge_list()) == single);
    }

    TEST_CASE("random trees round-trip through the edge list")
    {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 50; ++i) {
            const auto t = random_tree(1 + rng() % 30, rng);
            CHECK(parse_edge_list(t.to_edge_list()) == t);
        }
    }

    TEST_CASE("file reading")
    {
        const auto path = std::filesystem::temp_directory_path() / "pulseforge_tree_test.edges";
        {
            std::ofstream out(path);
            out << "0 1\n1 2\n";
        }
        CHECK(read_edge_list_file(path.string()).size() == 3);
        std::filesystem::remove(path);
        CHECK_THROWS_AS(read_edge_list_file(path.string()), Error);
    }

    TEST_CASE("bfs distances")
    {
        const auto d = bfs_distances(testutil::path(5), 0);
        CHECK(d == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
    }
}

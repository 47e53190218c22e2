#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pulseforge/cli.hpp"

using pulseforge::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path.string();
}

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("mc on path3 even")
    {
        const auto r = call({"mc", "--tree", "path3", "--alg", "even"});
        CHECK(r.code == 0);
        CHECK(r.out.rfind("1 terminal class; status=Terminated, leader=1, pulses=4", 0) == 0);
    }

    TEST_CASE("run on a symmetric file exits 2")
    {
        const auto p4 = temp_file("pulseforge_p4.edges", "0 1\n1 2\n2 3\n");
        const auto r = call({"run", "--tree", p4, "--alg", "general"});
        CHECK(r.code == 2);
        CHECK(r.err.find("SymmetricTree") != std::string::npos);
    }

    TEST_CASE("run prints outcome json and writes a trace")
    {
        const auto trace = (std::filesystem::temp_directory_path() / "pulseforge_trace.jsonl").string();
        const auto r = call({"run", "--tree", "c5", "--alg", "general", "--seed", "3", "--trace", trace});
        CHECK(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["status"] == "Terminated");
        CHECK(j["leader"] == 2);
        CHECK(j["pulses_by_category"]["total"] == 11);
        CHECK(j["seed"] == 3);
        std::ifstream in(trace);
        std::string line;
        int lines = 0;
        while (std::getline(in, line)) {
            const auto e = nlohmann::json::parse(line);
            CHECK(e.contains("receiver_state_digest"));
            ++lines;
        }
        CHECK(lines == 11);
    }

    TEST_CASE("seed falls back to PULSEFORGE_SEED")
    {
        setenv("PULSEFORGE_SEED", "42", 1);
        const auto r = call({"run", "--tree", "path3", "--alg", "even"});
        unsetenv("PULSEFORGE_SEED");
        CHECK(nlohmann::json::parse(r.out)["seed"] == 42);
        setenv("PULSEFORGE_SEED", "x", 1);
        CHECK(call({"run", "--tree", "path3", "--alg", "even"}).code == 2);
        unsetenv("PULSEFORGE_SEED");
    }

    TEST_CASE("stabilizing run with ids")
    {
        const auto r = call({"run", "--tree", "path2", "--alg", "stabilizing", "--ids", "3,5"});
        CHECK(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["status"] == "Stabilized");
        CHECK(j["pulses_by_category"]["total"] == 10);
        CHECK(call({"run", "--tree", "path2", "--alg", "stabilizing"}).code == 2);
        CHECK(call({"run", "--tree", "path2", "--alg", "stabilizing", "--ids", "3,x"}).code == 2);
    }

    TEST_CASE("budget exhaustion is a check failure")
    {
        CHECK(call({"run", "--tree", "c5", "--budget", "2"}).code == 1);
    }

    TEST_CASE("sweep complete-binary radius 1..3")
    {
        const auto r = call({"sweep", "--gen", "complete-binary", "--radius", "1..3", "--alg", "even", "--seeds", "20"});
        CHECK(r.code == 0);
        std::istringstream in(r.out);
        std::string line;
        std::getline(in, line);
        CHECK(line == "# pulseforge-sweep v1");
        std::getline(in, line);
        CHECK(line == "generator,n,D,algorithm,seed,status,leader_ok,pulses,expected,exact_ok,bound,bound_ok,checks_ok");
        int rows = 0;
        while (std::getline(in, line)) {
            ++rows;
            CHECK(line.find("false") == std::string::npos);
        }
        CHECK(rows == 60);
        CHECK(call({"sweep", "--gen", "complete-binary", "--radius", "1..3", "--alg", "even", "--seeds", "20"}).out ==
              r.out);
    }

    TEST_CASE("sweep json and timing")
    {
        const auto r = call({"sweep", "--gen", "path", "--n", "3", "--alg", "even", "--format", "json", "--timing"});
        CHECK(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["passed"] == true);
        CHECK(j["rows"][0].contains("wall_time"));
    }

    TEST_CASE("rules, layers, symmetry, encode, decode")
    {
        CHECK(call({"rules", "--tree", "c5"}).out.find("leader variant=odd-remaining-one degree=3") !=
              std::string::npos);
        CHECK(call({"rules", "--tree", "path4", "--alg", "even"}).code == 2);
        CHECK(call({"rules", "--tree", "path4"}).code == 2);
        CHECK(call({"layers", "--tree", "c5"}).out.rfind("diameter=3 radius=1 root=2 co_root=3", 0) == 0);
        CHECK(call({"symmetry", "--tree", "path4"}).out == "symmetric edge=1-2\n");
        CHECK(call({"symmetry", "--tree", "c5"}).out == "asymmetric\n");
        CHECK(call({"encode", "--tree", "c5"}).out == "((())()())\n");
        CHECK(call({"encode", "--tree", "path3", "--root", "0"}).out == "((()))\n");
        CHECK(call({"decode", "(()())"}).out == "0 1\n0 2\n");
        CHECK(call({"decode", "(()"}).code == 2);
    }

    TEST_CASE("usage errors exit 2")
    {
        CHECK(call({}).code == 2);
        CHECK(call({"bogus"}).code == 2);
        CHECK(call({"run"}).code == 2);
        CHECK(call({"run", "--tree", "no-such-tree"}).code == 2);
        CHECK(call({"run", "--tree", "path3", "--alg", "quantum"}).code == 2);
        CHECK(call({"sweep", "--gen", "path"}).code == 2);
        CHECK(call({"mc", "--tree", "c5", "--max-states", "2"}).code == 2);
        CHECK(call({"--help"}).code == 0);
    }
}

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "pulseforge/tree.hpp"

namespace pulseforge {

struct PathGen {
    std::size_t n = 1;
};
struct StarGen {
    std::size_t n = 1;  // total vertices, center 0
};
struct CompleteBinaryGen {
    std::uint32_t radius = 0;
};
struct RandomTreeGen {
    std::size_t n = 1;
    std::uint64_t seed = 0;
};
struct RandomAsymmetricTreeGen {
    std::size_t n = 1;
    std::uint64_t seed = 0;
    std::size_t max_retries = 1000;
};
// Random tree of `half` vertices glued to a copy of itself by an edge
// between the two copies of one random vertex; always edge-symmetric.
struct MirroredTreeGen {
    std::size_t half = 1;
    std::uint64_t seed = 0;
};

using GeneratorSpec =
    std::variant<PathGen, StarGen, CompleteBinaryGen, RandomTreeGen, RandomAsymmetricTreeGen, MirroredTreeGen>;

class GeneratorError : public Error {
public:
    using Error::Error;
};

TreeTopology generate(const GeneratorSpec& spec);

std::string describe(const GeneratorSpec& spec);

// Uniform labeled tree from a Prufer sequence drawn with `rng`.
TreeTopology random_tree(std::size_t n, std::mt19937_64& rng);

// Seeded shuffle of 1..n.
std::vector<std::uint64_t> permuted_ids(std::size_t n, std::uint64_t seed);

// Named topologies for the CLI: pathN, starN, binaryR, c5.
std::optional<TreeTopology> builtin_tree(const std::string& name);

// Caterpillar: path 1-2-3-4 with a pendant 0 on vertex 2.
TreeTopology caterpillar_c5();

}  // namespace pulseforge

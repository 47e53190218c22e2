#include "pulseforge/generators.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "pulseforge/symmetry.hpp"

namespace pulseforge {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

TreeTopology relabeled(const TreeTopology& tree, std::mt19937_64& rng)
{
    std::vector<Vertex> perm(tree.size());
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto edges = tree.edges();
    for (auto& [u, v] : edges) {
        u = perm[u];
        v = perm[v];
        if (rng() & 1u) std::swap(u, v);
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    return TreeTopology::from_edges(tree.size(), edges);
}

}  // namespace

TreeTopology random_tree(std::size_t n, std::mt19937_64& rng)
{
    if (n == 0) throw GeneratorError("a tree needs at least one vertex");
    if (n == 1) return TreeTopology::single_vertex();
    if (n == 2) {
        const std::vector<Edge> edge{{0, 1}};
        return TreeTopology::from_edges(2, edge);
    }
    std::uniform_int_distribution<Vertex> label(0, static_cast<Vertex>(n - 1));
    std::vector<Vertex> code(n - 2);
    for (auto& c : code) c = label(rng);

    std::vector<std::size_t> degree(n, 1);
    for (Vertex c : code) ++degree[c];
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
    for (Vertex v = 0; v < n; ++v) {
        if (degree[v] == 1) leaves.push(v);
    }
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (Vertex c : code) {
        Vertex leaf = leaves.top();
        leaves.pop();
        edges.emplace_back(leaf, c);
        if (--degree[c] == 1) leaves.push(c);
    }
    Vertex a = leaves.top();
    leaves.pop();
    Vertex b = leaves.top();
    edges.emplace_back(a, b);
    return TreeTopology::from_edges(n, edges);
}

TreeTopology generate(const GeneratorSpec& spec)
{
    return std::visit(
        overloaded{
            [](const PathGen& g) {
                if (g.n == 0) throw GeneratorError("path needs n >= 1");
                std::vector<Edge> edges;
                for (Vertex v = 1; v < g.n; ++v) edges.emplace_back(v - 1, v);
                return TreeTopology::from_edges(g.n, edges);
            },
            [](const StarGen& g) {
                if (g.n == 0) throw GeneratorError("star needs n >= 1");
                std::vector<Edge> edges;
                for (Vertex v = 1; v < g.n; ++v) edges.emplace_back(0, v);
                return TreeTopology::from_edges(g.n, edges);
            },
            [](const CompleteBinaryGen& g) {
                if (g.radius > 20) throw GeneratorError("complete binary radius too large");
                const std::size_t n = (std::size_t{2} << g.radius) - 1;
                std::vector<Edge> edges;
                for (Vertex v = 1; v < n; ++v) edges.emplace_back((v - 1) / 2, v);
                return TreeTopology::from_edges(n, edges);
            },
            [](const RandomTreeGen& g) {
                std::mt19937_64 rng(g.seed);
                return random_tree(g.n, rng);
            },
            [](const RandomAsymmetricTreeGen& g) {
                std::mt19937_64 rng(g.seed);
                for (std::size_t attempt = 0; attempt <= g.max_retries; ++attempt) {
                    TreeTopology tree = random_tree(g.n, rng);
                    if (!is_edge_symmetric(tree).symmetric) return tree;
                }
                throw GeneratorError("no asymmetric tree on " + std::to_string(g.n) + " vertices after " +
                                     std::to_string(g.max_retries + 1) + " draws");
            },
            [](const MirroredTreeGen& g) {
                std::mt19937_64 rng(g.seed);
                const TreeTopology half = random_tree(g.half, rng);
                std::vector<Edge> edges = half.edges();
                const auto h = static_cast<Vertex>(g.half);
                for (auto [u, v] : half.edges()) edges.emplace_back(u + h, v + h);
                const Vertex glue = std::uniform_int_distribution<Vertex>(0, h - 1)(rng);
                edges.emplace_back(glue, glue + h);
                return relabeled(TreeTopology::from_edges(2 * g.half, edges), rng);
            },
        },
        spec);
}

std::string describe(const GeneratorSpec& spec)
{
    return std::visit(
        overloaded{
            [](const PathGen& g) { return "path(" + std::to_string(g.n) + ")"; },
            [](const StarGen& g) { return "star(" + std::to_string(g.n) + ")"; },
            [](const CompleteBinaryGen& g) { return "complete-binary(" + std::to_string(g.radius) + ")"; },
            [](const RandomTreeGen& g) {
                return "random(" + std::to_string(g.n) + ";" + std::to_string(g.seed) + ")";
            },
            [](const RandomAsymmetricTreeGen& g) {
                return "random-asymmetric(" + std::to_string(g.n) + ";" + std::to_string(g.seed) + ")";
            },
            [](const MirroredTreeGen& g) {
                return "mirrored(" + std::to_string(g.half) + ";" + std::to_string(g.seed) + ")";
            },
        },
        spec);
}

std::vector<std::uint64_t> permuted_ids(std::size_t n, std::uint64_t seed)
{
    std::vector<std::uint64_t> ids(n);
    std::iota(ids.begin(), ids.end(), std::uint64_t{1});
    std::mt19937_64 rng(seed);
    std::shuffle(ids.begin(), ids.end(), rng);
    return ids;
}

TreeTopology caterpillar_c5()
{
    const std::vector<Edge> edges{{1, 2}, {2, 0}, {2, 3}, {3, 4}};
    return TreeTopology::from_edges(5, edges);
}

std::optional<TreeTopology> builtin_tree(const std::string& name)
{
    auto number_after = [&](std::string_view prefix) -> std::optional<std::size_t> {
        if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
        std::size_t value = 0;
        for (char c : name.substr(prefix.size())) {
            if (c < '0' || c > '9') return std::nullopt;
            value = value * 10 + static_cast<std::size_t>(c - '0');
        }
        return value;
    };
    if (name == "c5" || name == "caterpillar5") return caterpillar_c5();
    if (auto n = number_after("path"); n && *n >= 1) return generate(PathGen{*n});
    if (auto n = number_after("p"); n && *n >= 1) return generate(PathGen{*n});
    if (auto n = number_after("star"); n && *n >= 1) return generate(StarGen{*n});
    if (auto r = number_after("binary"); r && *r <= 20) return generate(CompleteBinaryGen{static_cast<std::uint32_t>(*r)});
    return std::nullopt;
}

}  // namespace pulseforge

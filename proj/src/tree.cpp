#include "pulseforge/tree.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace pulseforge {

const char* to_string(TopologyErrorKind kind)
{
    switch (kind) {
    case TopologyErrorKind::Cycle: return "cycle";
    case TopologyErrorKind::Disconnected: return "disconnected";
    case TopologyErrorKind::DuplicateEdge: return "duplicate edge";
    case TopologyErrorKind::BadToken: return "non-integer token";
    case TopologyErrorKind::DanglingToken: return "odd number of labels";
    case TopologyErrorKind::NotAdjacent: return "not adjacent";
    }
    return "unknown";
}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

    Vertex find(Vertex v)
    {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    bool unite(Vertex a, Vertex b)
    {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[a] = b;
        return true;
    }

private:
    std::vector<Vertex> parent_;
};

}  // namespace

TreeTopology TreeTopology::from_edges(std::size_t n, std::span<const Edge> edges)
{
    if (n == 0) throw TopologyError(TopologyErrorKind::Disconnected, "empty vertex set");

    TreeTopology tree;
    tree.adjacency_.resize(n);
    DisjointSets components(n);
    std::set<Edge> seen;
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) {
            throw TopologyError(TopologyErrorKind::Disconnected,
                                "label " + std::to_string(std::max(u, v)) + " outside 0.." + std::to_string(n - 1));
        }
        if (u == v) throw TopologyError(TopologyErrorKind::Cycle, "self-loop at " + std::to_string(u));
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
            throw TopologyError(TopologyErrorKind::DuplicateEdge,
                                "edge {" + std::to_string(u) + "," + std::to_string(v) + "} listed twice");
        }
        if (!components.unite(u, v)) {
            throw TopologyError(TopologyErrorKind::Cycle,
                                "edge {" + std::to_string(u) + "," + std::to_string(v) + "} closes a cycle");
        }
        tree.adjacency_[u].push_back(v);
        tree.adjacency_[v].push_back(u);
    }
    if (edges.size() != n - 1) {
        throw TopologyError(TopologyErrorKind::Disconnected,
                            std::to_string(edges.size()) + " edges for " + std::to_string(n) + " vertices");
    }
    return tree;
}

Port TreeTopology::port_to(Vertex v, Vertex u) const
{
    const auto& adj = adjacency_.at(v);
    auto it = std::find(adj.begin(), adj.end(), u);
    if (it == adj.end()) {
        throw TopologyError(TopologyErrorKind::NotAdjacent, std::to_string(v) + " and " + std::to_string(u));
    }
    return static_cast<Port>(it - adj.begin());
}

std::size_t TreeTopology::max_degree() const noexcept
{
    std::size_t best = 0;
    for (const auto& adj : adjacency_) best = std::max(best, adj.size());
    return best;
}

std::vector<Edge> TreeTopology::edges() const
{
    std::vector<Edge> out;
    out.reserve(size() - 1);
    for (Vertex v = 0; v < size(); ++v) {
        for (Vertex u : adjacency_[v]) {
            if (v < u) out.emplace_back(v, u);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string TreeTopology::to_edge_list() const
{
    // Emit an edge once it is the next unused port at both endpoints. In a
    // tree the per-vertex port orders never conflict, so this always drains.
    std::vector<std::size_t> next_port(size(), 0);
    std::ostringstream out;
    std::size_t remaining = size() - 1;
    while (remaining > 0) {
        for (Vertex v = 0; v < size(); ++v) {
            while (next_port[v] < adjacency_[v].size()) {
                Vertex u = adjacency_[v][next_port[v]];
                if (adjacency_[u][next_port[u]] != v) break;
                out << v << ' ' << u << '\n';
                ++next_port[v];
                ++next_port[u];
                --remaining;
            }
        }
    }
    return out.str();
}

TreeTopology parse_edge_list(std::string_view text)
{
    std::vector<Vertex> labels;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size()) break;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        std::string_view token = text.substr(i, j - i);
        Vertex value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size()) {
            throw TopologyError(TopologyErrorKind::BadToken, "'" + std::string(token) + "'");
        }
        labels.push_back(value);
        i = j;
    }
    if (labels.size() % 2 != 0) {
        throw TopologyError(TopologyErrorKind::DanglingToken, std::to_string(labels.size()) + " labels");
    }
    if (labels.empty()) return TreeTopology::single_vertex();

    std::vector<Edge> edges;
    edges.reserve(labels.size() / 2);
    for (std::size_t k = 0; k < labels.size(); k += 2) edges.emplace_back(labels[k], labels[k + 1]);
    std::size_t n = *std::max_element(labels.begin(), labels.end()) + std::size_t{1};
    return TreeTopology::from_edges(n, edges);
}

TreeTopology read_edge_list_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open edge list '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_edge_list(buffer.str());
}

std::vector<std::uint32_t> bfs_distances(const TreeTopology& tree, Vertex source)
{
    constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(tree.size(), unseen);
    std::queue<Vertex> frontier;
    dist.at(source) = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        Vertex v = frontier.front();
        frontier.pop();
        for (Vertex u : tree.neighbors(v)) {
            if (dist[u] == unseen) {
                dist[u] = dist[v] + 1;
                frontier.push(u);
            }
        }
    }
    return dist;
}

}  // namespace pulseforge

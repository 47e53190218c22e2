#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pulseforge {

using Vertex = std::uint32_t;
using Port = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class TopologyErrorKind {
    Cycle,
    Disconnected,
    DuplicateEdge,
    BadToken,
    DanglingToken,
    NotAdjacent,
};

const char* to_string(TopologyErrorKind kind);

class TopologyError : public Error {
public:
    TopologyError(TopologyErrorKind kind, const std::string& what)
        : Error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }
    TopologyErrorKind kind() const noexcept { return kind_; }

private:
    TopologyErrorKind kind_;
};

// Immutable undirected tree. Vertices are dense handles 0..n-1; the port of a
// neighbor is its index in that vertex's adjacency list.
class TreeTopology {
public:
    // Ports are assigned in order of first appearance in `edges`.
    // Throws TopologyError unless the edges form a spanning tree on n vertices.
    static TreeTopology from_edges(std::size_t n, std::span<const Edge> edges);

    static TreeTopology single_vertex() { return from_edges(1, {}); }

    std::size_t size() const noexcept { return adjacency_.size(); }
    std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
    Vertex neighbor(Vertex v, Port p) const { return adjacency_.at(v).at(p); }
    Port port_to(Vertex v, Vertex u) const;
    std::size_t max_degree() const noexcept;

    // Edges as (min, max) pairs sorted lexicographically.
    std::vector<Edge> edges() const;

    // Edge list text, one "u v" pair per line, in an order that reproduces
    // this topology's port numbering when parsed back.
    std::string to_edge_list() const;

    friend bool operator==(const TreeTopology&, const TreeTopology&) = default;

private:
    std::vector<std::vector<Vertex>> adjacency_;
};

// Whitespace separated "u v" pairs with labels 0..n-1, n = max label + 1.
// Empty input is the single-vertex tree.
TreeTopology parse_edge_list(std::string_view text);

TreeTopology read_edge_list_file(const std::string& path);

// Hop distance from `source` to every vertex.
std::vector<std::uint32_t> bfs_distances(const TreeTopology& tree, Vertex source);

}  // namespace pulseforge

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pulseforge/tree.hpp"

namespace pulseforge {

// Leaf-peeling decomposition V_0..V_r with the parent/children relation it
// induces. In the odd-diameter case the two central vertices are ordered by
// the subtree comparator and the lesser one (co_root) is attached below root.
struct Layering {
    std::vector<std::vector<Vertex>> layers;  // each sorted ascending
    std::vector<std::uint32_t> layer_of;
    std::vector<std::optional<Vertex>> parent_of;
    std::vector<std::vector<Vertex>> children_of;  // includes co_root under root
    Vertex root = 0;
    std::optional<Vertex> co_root;
    std::uint32_t diameter = 0;
    std::uint32_t radius = 0;
    // Odd diameter with isomorphic central subtrees: root is the lower index.
    bool root_arbitrary = false;

    bool odd() const noexcept { return co_root.has_value(); }

    // Children that lie in strictly lower layers, i.e. the children of v in
    // its own rooted subtree. Differs from children_of only at root.
    std::vector<Vertex> subtree_children(Vertex v) const;
};

// Enumeration T_1..T_k of the distinct rooted subtrees, ordered by the
// subtree comparator (low layer first, fewer children first, then the
// sorted child sequence).
struct SubtreeIndex {
    std::uint32_t shapes = 0;  // number of distinct rooted subtrees
    std::vector<std::string> canon;         // canon[i-1]: parenthesis form of T_i
    std::vector<Vertex> representative;     // representative[i-1]: some v with T^v = T_i
    std::vector<std::uint32_t> rank;        // rank[v] in 1..shapes: position of T^v in the enumeration

    // Pulses a node whose subtree has rank i pushes to its parent.
    std::uint32_t quota_for_rank(std::uint32_t i) const { return shapes - i; }
    std::uint32_t quota(Vertex v) const { return shapes - rank.at(v); }
};

Layering layer_decomposition(const TreeTopology& tree);

SubtreeIndex enumerate_subtrees(const TreeTopology& tree, const Layering& layering);

// Order of T^a and T^b; equivalent iff isomorphic as rooted trees.
std::weak_ordering compare_subtrees(const SubtreeIndex& index, Vertex a, Vertex b);

// Convenience overload that builds the index on the fly.
std::weak_ordering compare_subtrees(const TreeTopology& tree, const Layering& layering, Vertex a, Vertex b);

// Parenthesis encoding of the rooted subtree T^v.
std::string subtree_canon(const TreeTopology& tree, const Layering& layering, Vertex v);

// True iff every non-root vertex's parent sits exactly one layer above it
// (complete binary trees and paths are graded).
bool is_layer_graded(const Layering& layering);

}  // namespace pulseforge

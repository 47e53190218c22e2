#pragma once

#include <optional>

#include "pulseforge/tree.hpp"

namespace pulseforge {

struct SymmetryReport {
    bool symmetric = false;
    std::optional<Edge> witness_edge;  // (u, v) with u < v
};

// A tree is symmetric about {u,v} when cutting that edge leaves two
// components isomorphic via a map sending u to v. Edges are scanned in
// (min, max) lexicographic order and the first witness is reported.
SymmetryReport is_edge_symmetric(const TreeTopology& tree);

}  // namespace pulseforge

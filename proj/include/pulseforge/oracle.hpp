#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pulseforge/layering.hpp"
#include "pulseforge/network.hpp"

namespace pulseforge {

// Ground truth derived from the topology alone: who should win, which way
// pulses may travel before the election, and how many pulses each node may
// push to its parent.
class TreeOracle {
public:
    TreeOracle(const TreeTopology& tree, Algorithm algorithm);

    const Layering& layering() const noexcept { return layering_; }
    const std::optional<SubtreeIndex>& index() const noexcept { return index_; }
    Algorithm algorithm() const noexcept { return algorithm_; }

    bool is_child_to_parent(DirectedEdge e) const;

    // Pulses v may send to its parent through Upstream rules: r - layer(v)
    // for the even algorithm, the quota of its subtree rank for the general one.
    std::optional<std::uint64_t> upstream_cap(Vertex v) const;

    // Sum of upstream caps plus one Leader/Downstream pulse per edge.
    std::uint64_t exact_total() const;

    // Message-complexity bound: (n-1)r + (n-1), (n-1)^2 + (n-1), or
    // n + 2 ID_max - 1 for the stabilizing algorithm.
    std::uint64_t bound(const std::vector<std::uint64_t>* ids = nullptr) const;

    // Throws SymmetricTreeError for odd-diameter symmetric trees.
    Vertex expected_leader() const;

private:
    std::size_t n_ = 0;
    Algorithm algorithm_;
    Layering layering_;
    std::optional<SubtreeIndex> index_;
};

Vertex oracle_expected_leader(const TreeTopology& tree);

}  // namespace pulseforge

#include "pulseforge/oracle.hpp"

#include <algorithm>

#include "pulseforge/symmetry.hpp"

namespace pulseforge {

TreeOracle::TreeOracle(const TreeTopology& tree, Algorithm algorithm)
    : n_(tree.size()), algorithm_(algorithm), layering_(layer_decomposition(tree))
{
    if (algorithm == Algorithm::GeneralTree) index_ = enumerate_subtrees(tree, layering_);
}

bool TreeOracle::is_child_to_parent(DirectedEdge e) const
{
    return layering_.parent_of.at(e.from) == e.to;
}

std::optional<std::uint64_t> TreeOracle::upstream_cap(Vertex v) const
{
    if (v == layering_.root) return std::nullopt;
    switch (algorithm_) {
    case Algorithm::EvenDiameter: return layering_.radius - layering_.layer_of.at(v);
    case Algorithm::GeneralTree: return index_->quota(v);
    case Algorithm::Stabilizing: return std::nullopt;
    }
    return std::nullopt;
}

std::uint64_t TreeOracle::exact_total() const
{
    std::uint64_t total = n_ - 1;
    for (Vertex v = 0; v < n_; ++v) total += upstream_cap(v).value_or(0);
    return total;
}

std::uint64_t TreeOracle::bound(const std::vector<std::uint64_t>* ids) const
{
    const std::uint64_t n = n_;
    switch (algorithm_) {
    case Algorithm::EvenDiameter: return (n - 1) * layering_.radius + (n - 1);
    case Algorithm::GeneralTree: return (n - 1) * (n - 1) + (n - 1);
    case Algorithm::Stabilizing: {
        if (!ids || ids->empty()) throw Error("stabilizing bound needs ids");
        return n + 2 * *std::max_element(ids->begin(), ids->end()) - 1;
    }
    }
    return 0;
}

Vertex TreeOracle::expected_leader() const
{
    if (algorithm_ == Algorithm::Stabilizing) throw Error("the stabilizing winner depends on the schedule");
    if (layering_.root_arbitrary) throw SymmetricTreeError(Edge{layering_.root, *layering_.co_root});
    return layering_.root;
}

Vertex oracle_expected_leader(const TreeTopology& tree)
{
    const Layering layering = layer_decomposition(tree);
    if (layering.root_arbitrary) {
        auto report = is_edge_symmetric(tree);
        throw SymmetricTreeError(report.witness_edge.value_or(Edge{layering.root, *layering.co_root}));
    }
    return layering.root;
}

}  // namespace pulseforge

#include "pulseforge/symmetry.hpp"

#include "pulseforge/encoding.hpp"

namespace pulseforge {

SymmetryReport is_edge_symmetric(const TreeTopology& tree)
{
    // Component sizes must match first; only then compare canonical forms.
    std::vector<std::size_t> below(tree.size(), 1);
    std::vector<Vertex> order;
    std::vector<Vertex> parent(tree.size(), 0);
    std::vector<bool> seen(tree.size(), false);
    order.push_back(0);
    seen[0] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (Vertex u : tree.neighbors(order[i])) {
            if (seen[u]) continue;
            seen[u] = true;
            parent[u] = order[i];
            order.push_back(u);
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (*it != 0) below[parent[*it]] += below[*it];
    }

    for (auto [u, v] : tree.edges()) {
        Vertex child = parent[v] == u && v != 0 ? v : u;
        if (2 * below[child] != tree.size()) continue;
        if (canonical_form(tree, u, v) == canonical_form(tree, v, u)) return {true, Edge{u, v}};
    }
    return {};
}

}  // namespace pulseforge

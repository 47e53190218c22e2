#include "pulseforge/layering.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "pulseforge/encoding.hpp"

namespace pulseforge {

namespace {

struct Peeling {
    std::vector<std::vector<Vertex>> layers;
    std::vector<std::uint32_t> layer_of;
};

Peeling peel_leaves(const TreeTopology& tree)
{
    const std::size_t n = tree.size();
    Peeling out;
    out.layer_of.assign(n, 0);
    std::vector<std::size_t> residual(n);
    for (Vertex v = 0; v < n; ++v) residual[v] = tree.degree(v);

    std::vector<bool> removed(n, false);
    std::vector<Vertex> current;
    for (Vertex v = 0; v < n; ++v) {
        if (residual[v] <= 1) current.push_back(v);
    }
    while (!current.empty()) {
        std::sort(current.begin(), current.end());
        const auto layer = static_cast<std::uint32_t>(out.layers.size());
        for (Vertex v : current) {
            removed[v] = true;
            out.layer_of[v] = layer;
        }
        std::vector<Vertex> next;
        for (Vertex v : current) {
            for (Vertex u : tree.neighbors(v)) {
                if (removed[u]) continue;
                if (--residual[u] == 1) next.push_back(u);
            }
        }
        out.layers.push_back(std::move(current));
        current = std::move(next);
    }
    return out;
}

std::vector<Vertex> lower_children(const TreeTopology& tree, const std::vector<std::uint32_t>& layer_of, Vertex v)
{
    std::vector<Vertex> out;
    for (Vertex u : tree.neighbors(v)) {
        if (layer_of[u] < layer_of[v]) out.push_back(u);
    }
    return out;
}

// Assigns enumeration indices layer by layer. Within a layer the key is
// (child count, sorted child indices); lexicographic order on equal-length
// sorted index lists is exactly the recursion rule because the child indices
// are already consistent with the comparator.
std::vector<std::uint32_t> index_subtrees(const TreeTopology& tree, const Peeling& peeling,
                                          std::vector<Vertex>* representatives)
{
    using Key = std::pair<std::size_t, std::vector<std::uint32_t>>;
    std::vector<std::uint32_t> rank(tree.size(), 0);
    std::uint32_t assigned = 0;
    for (const auto& layer : peeling.layers) {
        std::map<Key, std::vector<Vertex>> classes;
        for (Vertex v : layer) {
            std::vector<std::uint32_t> child_indices;
            for (Vertex c : lower_children(tree, peeling.layer_of, v)) child_indices.push_back(rank[c]);
            std::sort(child_indices.begin(), child_indices.end());
            const std::size_t count = child_indices.size();
            classes[{count, std::move(child_indices)}].push_back(v);
        }
        for (const auto& [key, members] : classes) {
            ++assigned;
            for (Vertex v : members) rank[v] = assigned;
            if (representatives) representatives->push_back(members.front());
        }
    }
    return rank;
}

}  // namespace

std::vector<Vertex> Layering::subtree_children(Vertex v) const
{
    std::vector<Vertex> out;
    for (Vertex c : children_of.at(v)) {
        if (layer_of[c] < layer_of[v]) out.push_back(c);
    }
    return out;
}

Layering layer_decomposition(const TreeTopology& tree)
{
    Peeling peeling = peel_leaves(tree);
    const std::size_t n = tree.size();

    Layering out;
    out.radius = static_cast<std::uint32_t>(peeling.layers.size() - 1);
    const auto& top = peeling.layers.back();
    out.parent_of.assign(n, std::nullopt);
    out.children_of.assign(n, {});
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex u : tree.neighbors(v)) {
            if (peeling.layer_of[u] > peeling.layer_of[v]) {
                out.parent_of[v] = u;
            } else if (peeling.layer_of[u] < peeling.layer_of[v]) {
                out.children_of[v].push_back(u);
            }
        }
    }

    if (top.size() == 1) {
        out.diameter = 2 * out.radius;
        out.root = top.front();
    } else {
        out.diameter = 2 * out.radius + 1;
        const auto rank = index_subtrees(tree, peeling, nullptr);
        Vertex a = top[0];
        Vertex b = top[1];
        if (rank[a] == rank[b]) {
            out.root_arbitrary = true;
            out.root = std::min(a, b);
            out.co_root = std::max(a, b);
        } else {
            out.root = rank[a] > rank[b] ? a : b;
            out.co_root = rank[a] > rank[b] ? b : a;
        }
        out.parent_of[*out.co_root] = out.root;
        out.children_of[out.root].push_back(*out.co_root);
    }
    out.layers = std::move(peeling.layers);
    out.layer_of = std::move(peeling.layer_of);
    return out;
}

SubtreeIndex enumerate_subtrees(const TreeTopology& tree, const Layering& layering)
{
    Peeling peeling{layering.layers, layering.layer_of};
    SubtreeIndex index;
    index.rank = index_subtrees(tree, peeling, &index.representative);
    index.shapes = static_cast<std::uint32_t>(index.representative.size());
    index.canon.reserve(index.shapes);
    for (Vertex rep : index.representative) index.canon.push_back(subtree_canon(tree, layering, rep));
    return index;
}

std::weak_ordering compare_subtrees(const SubtreeIndex& index, Vertex a, Vertex b)
{
    return index.rank.at(a) <=> index.rank.at(b);
}

std::weak_ordering compare_subtrees(const TreeTopology& tree, const Layering& layering, Vertex a, Vertex b)
{
    return compare_subtrees(enumerate_subtrees(tree, layering), a, b);
}

std::string subtree_canon(const TreeTopology& tree, const Layering& layering, Vertex v)
{
    // T^v is the component of v once the edge to its parent is cut; at the
    // root of an odd-diameter tree the cut edge is the one to co_root.
    std::optional<Vertex> cut = layering.parent_of.at(v);
    if (v == layering.root && layering.co_root) cut = layering.co_root;
    return canonical_form(tree, v, cut);
}

bool is_layer_graded(const Layering& layering)
{
    for (Vertex v = 0; v < layering.layer_of.size(); ++v) {
        if (v == layering.co_root) continue;
        if (auto p = layering.parent_of[v]; p && layering.layer_of[*p] != layering.layer_of[v] + 1) return false;
    }
    return true;
}

}  // namespace pulseforge

#include "pulseforge/encoding.hpp"

#include <algorithm>
#include <limits>

namespace pulseforge {

std::string canonical_form(const TreeTopology& tree, Vertex root, std::optional<Vertex> excluded)
{
    // Iterative post-order so deep paths do not blow the call stack.
    struct Frame {
        Vertex vertex;
        Vertex parent;
        std::size_t next = 0;
        std::vector<std::string> parts;
    };
    constexpr Vertex none = std::numeric_limits<Vertex>::max();
    std::vector<Frame> stack;
    stack.push_back({root, excluded.value_or(none), 0, {}});
    std::string result;
    while (!stack.empty()) {
        Frame& top = stack.back();
        auto adj = tree.neighbors(top.vertex);
        if (top.next < adj.size()) {
            Vertex child = adj[top.next++];
            if (child != top.parent) stack.push_back({child, top.vertex, 0, {}});
            continue;
        }
        std::sort(top.parts.begin(), top.parts.end());
        std::string form = "(";
        for (const auto& part : top.parts) form += part;
        form += ')';
        stack.pop_back();
        if (stack.empty()) {
            result = std::move(form);
        } else {
            stack.back().parts.push_back(std::move(form));
        }
    }
    return result;
}

std::string encode_parens(const TreeTopology& tree, Vertex root)
{
    if (root >= tree.size()) throw Error("root " + std::to_string(root) + " is not a vertex");
    return canonical_form(tree, root);
}

TreeTopology decode_parens(std::string_view text)
{
    if (text.empty()) throw DecodeError("empty parenthesis string");
    std::vector<Edge> edges;
    std::vector<Vertex> open;
    Vertex next_vertex = 0;
    bool closed_root = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (closed_root) throw DecodeError("trailing characters after the root closes at offset " + std::to_string(i));
        if (c == '(') {
            Vertex v = next_vertex++;
            if (!open.empty()) edges.emplace_back(open.back(), v);
            open.push_back(v);
        } else if (c == ')') {
            if (open.empty()) throw DecodeError("unbalanced ')' at offset " + std::to_string(i));
            open.pop_back();
            closed_root = open.empty();
        } else {
            throw DecodeError(std::string("unexpected character '") + c + "' at offset " + std::to_string(i));
        }
    }
    if (!open.empty()) throw DecodeError("unbalanced: " + std::to_string(open.size()) + " unclosed '('");
    return TreeTopology::from_edges(next_vertex, edges);
}

}  // namespace pulseforge

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pulseforge/tree.hpp"

namespace pulseforge {

class DecodeError : public Error {
public:
    using Error::Error;
};

// Canonical balanced-parentheses form of the component containing `root`
// after cutting the edge to `excluded` (if any). Child strings are sorted in
// ASCII order, '(' < ')', before concatenation.
std::string canonical_form(const TreeTopology& tree, Vertex root, std::optional<Vertex> excluded = std::nullopt);

std::string encode_parens(const TreeTopology& tree, Vertex root);

// Inverse of encode_parens up to relabeling: vertices are numbered in
// preorder, so the root becomes vertex 0. Accepts non-canonical child order.
TreeTopology decode_parens(std::string_view text);

}  // namespace pulseforge

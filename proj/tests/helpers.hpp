#pragma once

#include <string>
#include <vector>

#include "pulseforge/generators.hpp"
#include "pulseforge/tree.hpp"

namespace testutil {

inline pulseforge::TreeTopology tree(const std::string& text) { return pulseforge::parse_edge_list(text); }

inline pulseforge::TreeTopology path(std::size_t n) { return pulseforge::generate(pulseforge::PathGen{n}); }

// P_9 with a two-vertex branch hanging off vertex 3: vertex 9 sits in V1
// but its parent 3 is in V3, so the tree is not layer-graded.
inline pulseforge::TreeTopology ungraded_spider()
{
    return tree("0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 8\n3 9\n9 10\n");
}

}  // namespace testutil

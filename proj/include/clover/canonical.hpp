#pragma once

#include <string>

#include "clover/graph.hpp"

namespace clover {

// Canonical form of a single-colored graph: `key` is the graph notation of a
// distinguished representative, unique per isomorphism class once the
// cyclic-order sign is quotiented out. `degenerate` marks classes carrying an
// automorphism that reverses an odd number of cyclic orders (so 2G = 0).
struct CanonicalGraph {
    std::string key;
    bool degenerate = false;

    bool operator==(const CanonicalGraph& o) const { return key == o.key; }
    bool operator<(const CanonicalGraph& o) const { return key < o.key; }
};

struct CanonResult {
    CanonicalGraph graph;
    int sign = 1; // +1 or -1; fixed to +1 for degenerate classes
};

// Requires every leg of g to carry a single color (expand first otherwise).
// Isomorphism respects leg colors and cyclic orders up to rotation; each
// cyclic-order reversal contributes a factor of -1 that is absorbed into
// `sign`.
CanonResult canonicalize(const ColoredGraph& g);

// Inverse of the key encoding (the key is plain graph notation).
ColoredGraph decode_key(const std::string& key);

} // namespace clover

#pragma once

#include <string>
#include <vector>

#include "clover/canonical.hpp"
#include "clover/graph.hpp"

namespace clover {

struct EnumerationOptions {
    int max_degree = 4;        // resource bound; raise deliberately
    bool connected_only = false;
    bool with_star = false;    // exactly one leg colored "*" (brane brackets)
};

// All isomorphism classes of single-colored graphs of one degree over a
// finite alphabet, split into non-degenerate generators and degenerate
// classes (2G = 0). Lists are duplicate-free and sorted by key, so matrix
// layouts are reproducible across runs.
struct GeneratorBasis {
    int degree = 0;
    std::vector<Color> alphabet;
    std::vector<CanonicalGraph> generators;
    std::vector<CanonicalGraph> degenerates;

    std::size_t total() const { return generators.size() + degenerates.size(); }
};

// Exhaustive enumeration: perfect matchings on 3n vertex slots plus k leg
// slots for every legal leg count (k == n mod 2, k <= 3n) and every color
// word, canonicalized and deduplicated.
GeneratorBasis enumerate_basis(int degree, const std::vector<Color>& alphabet,
                               const EnumerationOptions& opts = {});

std::vector<Color> make_alphabet(const std::vector<std::string>& names);

} // namespace clover

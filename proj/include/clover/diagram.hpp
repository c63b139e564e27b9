#pragma once

#include <map>
#include <string>
#include <vector>

#include "clover/canonical.hpp"
#include "clover/graph.hpp"
#include "clover/ints.hpp"

namespace clover {

// Finite integer combination of canonical graphs of one common degree.
// Degenerate classes satisfy 2G = 0 already in the ambient graph group, so
// their coefficients are kept reduced mod 2.
class DiagramVector {
public:
    struct Term {
        Int coeff;
        bool degenerate = false;
    };

    DiagramVector() = default;

    int degree() const { return degree_; } // -1 when empty
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::string, Term>& terms() const { return terms_; }

    void add_term(const CanonicalGraph& g, int graph_degree, const Int& coeff);
    void add_graph(const ColoredGraph& g, const Int& coeff = 1); // canonicalizes

    DiagramVector& operator+=(const DiagramVector& o);
    DiagramVector& operator-=(const DiagramVector& o);
    DiagramVector& operator*=(const Int& c);
    DiagramVector operator-() const;
    friend DiagramVector operator+(DiagramVector a, const DiagramVector& b) { return a += b; }
    friend DiagramVector operator-(DiagramVector a, const DiagramVector& b) { return a -= b; }
    friend DiagramVector operator*(const Int& c, DiagramVector v) { return v *= c; }

    bool operator==(const DiagramVector& o) const;

    // Flips the overall sign if the leading (smallest-key) coefficient is
    // negative; used when deduplicating relation vectors.
    void normalize_sign();

    std::string to_string() const;

private:
    int degree_ = -1;
    std::map<std::string, Term> terms_;
};

// Distributes multi-color leg labels multiplying coefficients; the result
// contains only single-colored graphs, canonicalized with signs applied.
DiagramVector expand(const ColoredGraph& g, const Int& coeff = 1);

} // namespace clover

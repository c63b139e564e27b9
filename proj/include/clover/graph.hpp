#pragma once

#include <string>
#include <utility>
#include <vector>

#include "clover/ints.hpp"

namespace clover {

// Reserved leg color used by the brane brackets; never part of an alphabet.
inline const std::string kStarColor = "*";

struct Color {
    std::string name;
    int index = 0; // position in the spanning link / alphabet
};

// Formal nonzero integer combination of colors. Terms are kept sorted by
// color name and never store a zero coefficient.
class LegLabel {
public:
    LegLabel() = default;
    explicit LegLabel(const std::string& color) { add(color, 1); }
    LegLabel(const std::string& color, const Int& coeff) { add(color, coeff); }

    void add(const std::string& color, const Int& coeff);

    const std::vector<std::pair<std::string, Int>>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    bool is_single() const { return terms_.size() == 1 && terms_[0].second == 1; }
    const std::string& sole_color() const;

    bool operator==(const LegLabel& o) const { return terms_ == o.terms_; }

    std::string to_string() const;

private:
    std::vector<std::pair<std::string, Int>> terms_;
};

// Uni-trivalent multigraph with a cyclic order at every trivalent vertex and
// labeled legs. Half-edges are numbered globally: slot s of trivalent vertex
// v is 3*v + s (slot order = counterclockwise cyclic order), leg j is
// 3*trivalent_count + j. `mate` is the perfect matching on half-edges.
struct ColoredGraph {
    int trivalent_count = 0;
    std::vector<LegLabel> legs;
    std::vector<int> mate;

    int slot_count() const { return 3 * trivalent_count; }
    int half_edge_count() const { return slot_count() + static_cast<int>(legs.size()); }
    int leg_half_edge(int j) const { return slot_count() + j; }
    bool is_leg_half_edge(int h) const { return h >= slot_count(); }

    // Throws InputError when the perfect-matching / no-struts / parity
    // invariants fail.
    void validate() const;

    bool has_loop_edge() const;       // some edge joins two slots of one vertex
    bool has_internal_edge() const;   // some edge joins two trivalent vertices
    int component_count() const;      // connected components (empty graph: 0)
    bool is_connected() const { return component_count() == 1; }
    bool all_single_colored() const;

    // Leg indices of legs whose (single) color equals `color`.
    std::vector<int> legs_with_color(const std::string& color) const;
};

// Removes legs i and j and joins their attachment slots by an internal edge.
ColoredGraph glue_legs(const ColoredGraph& g, int i, int j);

// Same, for several disjoint leg pairs at once (used by the framing move).
ColoredGraph glue_leg_pairs(const ColoredGraph& g,
                            const std::vector<std::pair<int, int>>& pairs);

// Returns a copy with leg i relabeled.
ColoredGraph recolor_leg(const ColoredGraph& g, int i, const LegLabel& label);

// Textual graph notation, e.g.
//   deg=2; legs=[x,y]; edges=[v0.0-v0.1, v0.2-l0, v1.0-l1, v1.1-v1.2]
// Emission is canonical (edges sorted, endpoints ordered); parsing accepts
// any order and validates the invariants.
std::string emit_graph(const ColoredGraph& g);
ColoredGraph parse_graph(const std::string& text);

// Parses a leg label like "x", "2x", "-x+y".
LegLabel parse_leg_label(const std::string& text);

} // namespace clover

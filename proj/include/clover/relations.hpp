#pragma once

#include <string>
#include <vector>

#include "clover/diagram.hpp"
#include "clover/enumeration.hpp"
#include "clover/model.hpp"

namespace clover {

// Which relation families to generate. OBR is only defined on top of BR
// (the open quotient refines the closed one).
struct RelationSelection {
    bool as = true;
    bool ihx = true;
    bool loop = true;
    bool br = false;
    bool obr = false;

    void validate() const;
    static RelationSelection parse(const std::string& csv); // "as,ihx,loop,br,obr"
    std::string to_string() const;

    static RelationSelection for_b() { return {true, true, true, false, false}; }
    static RelationSelection for_a() { return {true, true, true, true, false}; }
    static RelationSelection for_ao() { return {true, true, true, true, true}; }
};

// A graph with one distinguished leg colored by the reserved symbol '*'.
struct StarGraph {
    ColoredGraph base;
    int star_leg = -1;

    StarGraph(ColoredGraph g, int leg);
    static StarGraph from_graph(const ColoredGraph& g); // finds the unique '*' leg
};

// One I - H + X vector per (generator, internal edge), duplicates removed.
std::vector<DiagramVector> ihx_relations(const GeneratorBasis& basis);

// G = 0 for each generator containing a self-loop edge.
std::vector<DiagramVector> loop_relations(const GeneratorBasis& basis);

// Sum over non-star legs l of P[s][color(l)] * (star glued to l).
DiagramVector bracket_closed(const StarGraph& g, int h2_row, const ManifoldModel& m);

// expand(base with '*' recolored by the kernel combination) plus the pairing-
// weighted gluing sum.
DiagramVector bracket_open(const StarGraph& g, const std::vector<Int>& kernel,
                           const std::vector<Int>& pairing, const ManifoldModel& m);

// One bracket per (star-bearing generator, H2 row / obr surface).
std::vector<DiagramVector> br_relations(const GeneratorBasis& star_basis,
                                        const ManifoldModel& m);
std::vector<DiagramVector> obr_relations(const GeneratorBasis& star_basis,
                                         const ManifoldModel& m);

// Star-bearing generators: alphabet extended by '*', exactly one '*'-leg.
GeneratorBasis star_basis(int degree, const ManifoldModel& m,
                          EnumerationOptions opts = {});

struct RelationBundle {
    GeneratorBasis basis;
    std::vector<DiagramVector> relations;
};

// Basis plus all selected relation vectors for one degree of the model.
RelationBundle build_relations(const ManifoldModel& m, int degree,
                               const RelationSelection& sel,
                               const EnumerationOptions& opts = {});

} // namespace clover

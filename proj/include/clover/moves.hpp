#pragma once

#include <string>
#include <vector>

#include "clover/linalg.hpp"
#include "clover/model.hpp"
#include "clover/relations.hpp"

namespace clover {

// The three moves relating any two H1-spanning links: band-summing one
// component into another, changing a framing, and inserting or deleting a
// null-homologous zero-framed component.
struct Move {
    enum class Kind { M1, M2, M3Insert, M3Delete };
    Kind kind = Kind::M2;
    std::string comp_a;          // M1 source / M2 component / M3 component
    std::string comp_b;          // M1 target
    int sign = +1;               // M1 orientation or M2 epsilon
    std::vector<Int> pairing;    // M3: surface pairing per source-model component

    static Move m1(const std::string& src, const std::string& tgt, int sign);
    static Move m2(const std::string& comp, int epsilon);
    static Move m3_insert(const std::string& name, std::vector<Int> pairing = {});
    static Move m3_delete(const std::string& name, std::vector<Int> pairing = {});

    // "m1:x:y:+1", "m2:x:-1", "m3:insert:c0", "m3:delete:c0:x=1,t=0"
    static Move parse(const std::string& text, const ManifoldModel& m);
    std::string to_string() const;
};

std::string band_sum_name(const std::string& a, const std::string& b, int sign);

ManifoldModel apply_move_to_model(const ManifoldModel& m, const Move& mv);

// Recolors every `from`-colored leg by `to` and expands multilinearly.
DiagramVector recolor_expand(const DiagramVector& v, const std::string& from,
                             const LegLabel& to);

// The induced map on diagram vectors (forward: source -> target coloring;
// inverse: the backward map of the same move).
DiagramVector apply_move(const DiagramVector& v, const Move& mv,
                         const ManifoldModel& source, const ManifoldModel& target,
                         bool inverse);

// Even-subset gluing map of the framing move: sum over even subsets of the
// `comp`-colored legs and all pairings of the chosen subset, weighted by
// epsilon^(pairs).
DiagramVector apply_m2(const DiagramVector& v, const std::string& comp, int epsilon);

// Eliminates every `comp`-colored leg, leftmost first, via
// G -> -sum_l pairing[color(l)] * G_l.
DiagramVector eliminate_color(const DiagramVector& v, const std::string& comp,
                              const std::vector<Int>& pairing, const ManifoldModel& m);

// Matrix of the move map on complement-basis coordinates of the open
// quotients (entries must come out integral).
IntegerMatrix induced_matrix(const Move& mv, int degree, const ManifoldModel& src,
                             const ManifoldModel& tgt,
                             const EnumerationOptions& opts = {});

struct MoveCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct MoveReport {
    Move move;
    int degree = 0;
    std::vector<MoveCheck> checks;
    bool ok() const;
    std::string to_text() const;
};

// (a) relations map to relations, (b) forward then inverse is the identity on
// quotient coordinates (both ways, integrally), (c) free rank and torsion
// agree between source and target.
MoveReport verify_isomorphism(const Move& mv, int degree, const ManifoldModel& src,
                              const EnumerationOptions& opts = {});

} // namespace clover

#pragma once

#include <string>
#include <vector>

#include "clover/enumeration.hpp"
#include "clover/model.hpp"

namespace clover {

struct CorollaryInstance {
    enum class Status { Pass, Fail, NotApplicable };
    std::string model;
    std::string instance;
    int degree = 0;
    Status status = Status::Pass;
    std::string witness; // failing vector, when any

    bool failed() const { return status == Status::Fail; }
};

struct CorollaryReport {
    std::string name;
    int degree_lo = 0, degree_hi = 0;
    std::vector<CorollaryInstance> instances;

    bool all_applicable_pass() const;
    std::string to_text() const;
    std::string to_machine() const;
};

// A(b) = Ao(b) when the link is a torsion-free basis: the open relation list
// is empty and both presentations agree exactly.
CorollaryReport check_basis_obr_vacuous(const ManifoldModel& m, int degree_max,
                                        const EnumerationOptions& opts = {});

// B(b) = A(b) when every H2 pairing row vanishes.
CorollaryReport check_br_vacuous(const ManifoldModel& m, int degree_max,
                                 const EnumerationOptions& opts = {});

// Graphs with an internal edge colored by a non-spanning sublink (legless
// graphs in particular, for b1 > 0) reduce to zero in Ao(b) over Q.
CorollaryReport check_legless_vanishing(const ManifoldModel& m, int degree,
                                        const EnumerationOptions& opts = {});

// Leg-replacement family: r+1 legs colored x, y_1..y_r with x primitive and
// independent of the y's.
struct LevineFamily {
    ColoredGraph graph; // single-colored legs
    int x_leg = 0;      // the distinguished x-colored leg
};

// G^(k) = 0 in Ao(b) over Q for k = 0..r, plus the exact polynomial identity
// expand(G(n)) = sum_k n^k G^(k) for small n, where G(n) recolors the i-th
// y-leg by y_i + n x.
CorollaryReport check_levine(const ManifoldModel& m, const LevineFamily& family,
                             const EnumerationOptions& opts = {});

// Equality of Q-ranks per degree between A(b) and Ao(b') for a Q-basis b and
// a spanning b' with extra torsion components.
CorollaryReport check_rational_invariance(const ManifoldModel& b_model,
                                          const ManifoldModel& bp_model, int degree_max,
                                          const EnumerationOptions& opts = {});

// Runs every applicable check against one model (used by the CLI).
std::vector<CorollaryReport> corollary_suite(const ManifoldModel& m, int degree_max,
                                             const EnumerationOptions& opts = {});

} // namespace clover

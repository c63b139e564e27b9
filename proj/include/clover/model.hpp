#pragma once

#include <string>
#include <vector>

#include "clover/graph.hpp"
#include "clover/ints.hpp"

namespace clover {

struct LinkComponent {
    std::string name;
    std::vector<Int> class_free;    // length b1
    std::vector<Int> class_torsion; // entry i taken mod torsion[i]
    Int framing = 0;
};

// A choice of bounding surface for a nullhomologous cycle: the cycle as a
// combination of link components, and its intersection numbers against the
// components.
struct ObrSurface {
    std::vector<Int> kernel;  // per component
    std::vector<Int> pairing; // per component
};

// Homological data of a closed oriented 3-manifold with an H1-spanning link:
// everything the brane relations consume. The model is the input, never
// derived from a triangulation.
struct ManifoldModel {
    int b1 = 0;
    std::vector<Int> torsion; // invariant factors >= 2
    std::vector<LinkComponent> components;
    std::vector<std::vector<Int>> h2_pairings; // row: H2 generator, col: component
    bool h2_complete = true;
    std::vector<ObrSurface> obr_surfaces;

    int component_index(const std::string& name) const; // -1 when absent
    std::vector<Color> alphabet() const;

    // Structural checks plus the surface invariants: every kernel vector is
    // nullhomologous and together they generate the nullhomology lattice.
    void validate() const;

    // True iff a formal combination of components maps to 0 in H1.
    bool is_nullhomologous(const std::vector<Int>& combo) const;
};

// True iff the component classes surject onto Z^b1 (+) sum Z/n_i.
bool validate_spanning(const ManifoldModel& m);

// Basis of { a : sum a_i [b_i] = 0 in H1 }, deterministic.
std::vector<std::vector<Int>> kernel_lattice(const ManifoldModel& m);

// Convenience model: one zero-framed component per free generator (identity
// classes, dual H2 surfaces) and one per torsion factor (kernel surfaces with
// zero pairings).
ManifoldModel closed_rational_model(int b1, const std::vector<Int>& torsion);

ManifoldModel load_model(const std::string& json_text);
ManifoldModel load_model_file(const std::string& path);
std::string save_model(const ManifoldModel& m);

} // namespace clover

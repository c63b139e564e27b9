#include "clover/verification.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "clover/errors.hpp"
#include "clover/linalg.hpp"
#include "clover/relations.hpp"

namespace clover {

namespace {

const char* status_name(CorollaryInstance::Status s) {
    switch (s) {
        case CorollaryInstance::Status::Pass: return "pass";
        case CorollaryInstance::Status::Fail: return "fail";
        case CorollaryInstance::Status::NotApplicable: return "not-applicable";
    }
    return "?";
}

std::string model_label(const ManifoldModel& m) {
    std::ostringstream out;
    out << "b1=" << m.b1 << ",torsion=[";
    for (std::size_t i = 0; i < m.torsion.size(); ++i)
        out << (i ? "," : "") << m.torsion[i];
    out << "],components=" << m.components.size();
    return out.str();
}

CorollaryInstance instance(const ManifoldModel& m, const std::string& what, int degree,
                           CorollaryInstance::Status st, const std::string& witness = "") {
    return {model_label(m), what, degree, st, witness};
}

// does rowspan_Z(P) contain a vector with value 1 at `target` and 0 on `used`?
bool dual_surface_exists(const ManifoldModel& m, int target,
                         const std::vector<int>& used_components) {
    std::vector<int> cols;
    cols.push_back(target);
    for (int c : used_components)
        if (c != target) cols.push_back(c);
    std::vector<SparseRow> rows;
    for (const auto& p : m.h2_pairings) {
        SparseRow r;
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (p[static_cast<std::size_t>(cols[i])] != 0)
                r.push_back({static_cast<int>(i), p[static_cast<std::size_t>(cols[i])]});
        if (!r.empty()) rows.push_back(std::move(r));
    }
    Hermite h = hermite_z(std::move(rows), static_cast<int>(cols.size()));
    SparseRow want{{0, Int(1)}};
    return reduce_z(h, want).empty();
}

// Q-rank of the classes of a set of components
int class_rank(const ManifoldModel& m, const std::vector<int>& comps) {
    std::vector<SparseRow> rows;
    for (int c : comps) {
        SparseRow r;
        for (int i = 0; i < m.b1; ++i) {
            const Int& v = m.components[static_cast<std::size_t>(c)].class_free[static_cast<std::size_t>(i)];
            if (v != 0) r.push_back({i, v});
        }
        if (!r.empty()) rows.push_back(std::move(r));
    }
    return echelon_q(std::move(rows), m.b1).rank();
}

bool quotients_equal(const GradedQuotient& a, const GradedQuotient& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
}

} // namespace

bool CorollaryReport::all_applicable_pass() const {
    for (const auto& i : instances)
        if (i.failed()) return false;
    return true;
}

std::string CorollaryReport::to_text() const {
    std::ostringstream out;
    out << "corollary " << name << " degrees " << degree_lo << ".." << degree_hi << ": "
        << (all_applicable_pass() ? "pass" : "FAIL") << "\n";
    for (const auto& i : instances) {
        out << "  [" << status_name(i.status) << "] degree=" << i.degree << " model{"
            << i.model << "} " << i.instance;
        if (!i.witness.empty()) out << " witness: " << i.witness;
        out << "\n";
    }
    return out.str();
}

std::string CorollaryReport::to_machine() const {
    std::ostringstream out;
    for (const auto& i : instances) {
        out << "corollary=" << name << " degree=" << i.degree << " status="
            << status_name(i.status) << " model=\"" << i.model << "\" instance=\""
            << i.instance << "\"";
        if (!i.witness.empty()) out << " witness=\"" << i.witness << "\"";
        out << "\n";
    }
    return out.str();
}

CorollaryReport check_basis_obr_vacuous(const ManifoldModel& m, int degree_max,
                                        const EnumerationOptions& opts) {
    CorollaryReport rep;
    rep.name = "obr-vacuous-basis";
    rep.degree_hi = degree_max;
    bool applicable = m.torsion.empty() &&
                      static_cast<int>(m.components.size()) == m.b1 &&
                      validate_spanning(m) && kernel_lattice(m).empty();
    if (!applicable) {
        rep.instances.push_back(instance(m, "link is not a torsion-free basis", 0,
                                         CorollaryInstance::Status::NotApplicable));
        return rep;
    }
    for (int d = 0; d <= degree_max; ++d) {
        GeneratorBasis stars = star_basis(d, m, opts);
        auto obr = obr_relations(stars, m);
        rep.instances.push_back(instance(
            m, "obr relation list empty", d,
            obr.empty() ? CorollaryInstance::Status::Pass : CorollaryInstance::Status::Fail));
        RelationBundle ra = build_relations(m, d, RelationSelection::for_a(), opts);
        RelationBundle ro = build_relations(m, d, RelationSelection::for_ao(), opts);
        GradedQuotient qa = present_quotient(ra.basis, ra.relations, Ring::Z);
        GradedQuotient qo = present_quotient(ro.basis, ro.relations, Ring::Z);
        rep.instances.push_back(instance(m, "A = Ao (rank and torsion)", d,
                                         quotients_equal(qa, qo)
                                             ? CorollaryInstance::Status::Pass
                                             : CorollaryInstance::Status::Fail));
    }
    return rep;
}

CorollaryReport check_br_vacuous(const ManifoldModel& m, int degree_max,
                                 const EnumerationOptions& opts) {
    CorollaryReport rep;
    rep.name = "br-vacuous-zero-pairing";
    rep.degree_hi = degree_max;
    bool zero_pairing = true;
    for (const auto& row : m.h2_pairings)
        for (const auto& v : row) zero_pairing = zero_pairing && v == 0;
    if (!zero_pairing) {
        rep.instances.push_back(instance(m, "intersection pairing does not vanish", 0,
                                         CorollaryInstance::Status::NotApplicable));
        return rep;
    }
    for (int d = 0; d <= degree_max; ++d) {
        GeneratorBasis stars = star_basis(d, m, opts);
        auto br = br_relations(stars, m);
        rep.instances.push_back(instance(
            m, "br relation list empty", d,
            br.empty() ? CorollaryInstance::Status::Pass : CorollaryInstance::Status::Fail));
        RelationBundle rb = build_relations(m, d, RelationSelection::for_b(), opts);
        RelationBundle ra = build_relations(m, d, RelationSelection::for_a(), opts);
        GradedQuotient qb = present_quotient(rb.basis, rb.relations, Ring::Z);
        GradedQuotient qa = present_quotient(ra.basis, ra.relations, Ring::Z);
        rep.instances.push_back(instance(m, "B = A (rank and torsion)", d,
                                         quotients_equal(qb, qa)
                                             ? CorollaryInstance::Status::Pass
                                             : CorollaryInstance::Status::Fail));
    }
    return rep;
}

CorollaryReport check_legless_vanishing(const ManifoldModel& m, int degree,
                                        const EnumerationOptions& opts) {
    CorollaryReport rep;
    rep.name = "legless-vanishing";
    rep.degree_lo = rep.degree_hi = degree;
    RelationBundle bundle = build_relations(m, degree, RelationSelection::for_ao(), opts);
    GradedQuotient q = present_quotient(bundle.basis, bundle.relations, Ring::Q);
    for (const auto& cls : bundle.basis.generators) {
        ColoredGraph g = decode_key(cls.key);
        if (!g.has_internal_edge()) continue;
        std::vector<int> used;
        for (const auto& l : g.legs) {
            int ci = m.component_index(l.sole_color());
            if (ci >= 0 && std::find(used.begin(), used.end(), ci) == used.end())
                used.push_back(ci);
        }
        if (class_rank(m, used) >= m.b1) continue; // sublink spans over Q
        std::string what = g.legs.empty() ? "legless generator reduces to 0"
                                          : "non-spanning sublink generator reduces to 0";
        // need a component outside the sublink span with a dual surface in P
        bool applicable = false;
        for (int x = 0; x < static_cast<int>(m.components.size()) && !applicable; ++x) {
            if (std::find(used.begin(), used.end(), x) != used.end()) continue;
            std::vector<int> with_x = used;
            with_x.push_back(x);
            if (class_rank(m, with_x) == class_rank(m, used)) continue; // not independent
            applicable = dual_surface_exists(m, x, used);
        }
        if (!applicable) {
            rep.instances.push_back(instance(m, what + " [" + cls.key + "]", degree,
                                             CorollaryInstance::Status::NotApplicable));
            continue;
        }
        DiagramVector v;
        v.add_term(cls, degree, 1);
        Coordinates coords = reduce_to_normal_form(v, q);
        rep.instances.push_back(instance(m, what + " [" + cls.key + "]", degree,
                                         coords.is_zero()
                                             ? CorollaryInstance::Status::Pass
                                             : CorollaryInstance::Status::Fail,
                                         coords.is_zero() ? "" : coords.to_string()));
    }
    if (rep.instances.empty())
        rep.instances.push_back(instance(m, "no generator with an internal edge and "
                                            "non-spanning colors at this degree",
                                         degree, CorollaryInstance::Status::NotApplicable));
    return rep;
}

CorollaryReport check_levine(const ManifoldModel& m, const LevineFamily& family,
                             const EnumerationOptions& opts) {
    CorollaryReport rep;
    rep.name = "levine-family";
    family.graph.validate();
    int degree = family.graph.trivalent_count;
    rep.degree_lo = rep.degree_hi = degree;
    int r = static_cast<int>(family.graph.legs.size()) - 1;
    if (family.x_leg < 0 || family.x_leg > r)
        throw InputError("levine: x leg out of range");
    const std::string x_color = family.graph.legs[static_cast<std::size_t>(family.x_leg)].sole_color();
    std::vector<int> y_legs;
    for (int j = 0; j <= r; ++j)
        if (j != family.x_leg) y_legs.push_back(j);

    // guards: internal edge, x primitive and independent of the y's over Q
    bool applicable = family.graph.has_internal_edge();
    int xi = m.component_index(x_color);
    std::vector<int> y_comps;
    for (int j : y_legs) {
        int ci = m.component_index(family.graph.legs[static_cast<std::size_t>(j)].sole_color());
        if (ci < 0) applicable = false;
        else if (std::find(y_comps.begin(), y_comps.end(), ci) == y_comps.end())
            y_comps.push_back(ci);
    }
    if (xi < 0) applicable = false;
    if (applicable) {
        std::vector<int> all = y_comps;
        all.push_back(xi);
        applicable = class_rank(m, all) == class_rank(m, y_comps) + 1;
        Int g = 0;
        for (const auto& v : m.components[static_cast<std::size_t>(xi)].class_free)
            g = gcd_int(g, v);
        applicable = applicable && g == 1;
    }
    if (!applicable) {
        rep.instances.push_back(instance(m, "family hypotheses not met", degree,
                                         CorollaryInstance::Status::NotApplicable));
        return rep;
    }

    // G^(k): sum over all ways of replacing k of the y-legs by x
    auto g_k = [&](int k) {
        DiagramVector sum;
        std::vector<int> idx(static_cast<std::size_t>(k));
        // iterate k-subsets of y_legs
        std::function<void(int, int)> rec = [&](int start, int chosen) {
            if (chosen == k) {
                ColoredGraph g = family.graph;
                for (int t = 0; t < k; ++t)
                    g.legs[static_cast<std::size_t>(y_legs[static_cast<std::size_t>(
                        idx[static_cast<std::size_t>(t)])])] = LegLabel(x_color);
                sum += expand(g);
                return;
            }
            for (int i = start; i < static_cast<int>(y_legs.size()); ++i) {
                idx[static_cast<std::size_t>(chosen)] = i;
                rec(i + 1, chosen + 1);
            }
        };
        rec(0, 0);
        return sum;
    };

    RelationBundle bundle = build_relations(m, degree, RelationSelection::for_ao(), opts);
    GradedQuotient q = present_quotient(bundle.basis, bundle.relations, Ring::Q);
    std::vector<DiagramVector> gk;
    for (int k = 0; k <= r; ++k) {
        gk.push_back(g_k(k));
        Coordinates coords = reduce_to_normal_form(gk.back(), q);
        rep.instances.push_back(instance(m, "G^(" + std::to_string(k) + ") = 0 in Ao over Q",
                                         degree,
                                         coords.is_zero() ? CorollaryInstance::Status::Pass
                                                          : CorollaryInstance::Status::Fail,
                                         coords.is_zero() ? "" : coords.to_string()));
    }
    // polynomial identity: G(n) with y_i + n x legs expands to sum_k n^k G^(k)
    for (int n = 0; n <= 3; ++n) {
        ColoredGraph g = family.graph;
        for (int j : y_legs) {
            LegLabel lbl = g.legs[static_cast<std::size_t>(j)];
            lbl.add(x_color, n);
            g.legs[static_cast<std::size_t>(j)] = lbl;
        }
        DiagramVector lhs = expand(g);
        DiagramVector rhs;
        Int nk = 1;
        for (int k = 0; k <= r; ++k) {
            rhs += nk * gk[static_cast<std::size_t>(k)];
            nk *= n;
        }
        rep.instances.push_back(instance(m, "G(" + std::to_string(n) +
                                                ") = sum_k n^k G^(k) exactly",
                                         degree,
                                         lhs == rhs ? CorollaryInstance::Status::Pass
                                                    : CorollaryInstance::Status::Fail));
    }
    return rep;
}

CorollaryReport check_rational_invariance(const ManifoldModel& b_model,
                                          const ManifoldModel& bp_model, int degree_max,
                                          const EnumerationOptions& opts) {
    CorollaryReport rep;
    rep.name = "rational-invariance";
    rep.degree_hi = degree_max;
    for (int d = 0; d <= degree_max; ++d) {
        RelationBundle ra = build_relations(b_model, d, RelationSelection::for_a(), opts);
        RelationBundle ro = build_relations(bp_model, d, RelationSelection::for_ao(), opts);
        GradedQuotient qa = present_quotient(ra.basis, ra.relations, Ring::Q);
        GradedQuotient qo = present_quotient(ro.basis, ro.relations, Ring::Q);
        std::ostringstream what;
        what << "rank_Q A(b) = " << qa.free_rank << " vs rank_Q Ao(b') = " << qo.free_rank;
        rep.instances.push_back(instance(bp_model, what.str(), d,
                                         qa.free_rank == qo.free_rank
                                             ? CorollaryInstance::Status::Pass
                                             : CorollaryInstance::Status::Fail));
    }
    return rep;
}

std::vector<CorollaryReport> corollary_suite(const ManifoldModel& m, int degree_max,
                                             const EnumerationOptions& opts) {
    std::vector<CorollaryReport> out;
    out.push_back(check_basis_obr_vacuous(m, degree_max, opts));
    out.push_back(check_br_vacuous(m, degree_max, opts));
    {
        CorollaryReport legless;
        legless.name = "legless-vanishing";
        legless.degree_hi = degree_max;
        for (int d = 0; d <= degree_max; ++d) {
            CorollaryReport one = check_legless_vanishing(m, d, opts);
            legless.instances.insert(legless.instances.end(), one.instances.begin(),
                                     one.instances.end());
        }
        out.push_back(std::move(legless));
    }
    // rational invariance: strip the torsion components to get the Q-basis side
    {
        bool free_part_basis = true;
        ManifoldModel b = m;
        b.torsion.clear();
        std::vector<LinkComponent> free_comps;
        for (auto& c : m.components) {
            bool torsion_class = true;
            for (const auto& v : c.class_free) torsion_class = torsion_class && v == 0;
            if (torsion_class) continue;
            LinkComponent fc = c;
            fc.class_torsion.clear();
            free_comps.push_back(std::move(fc));
        }
        b.components = std::move(free_comps);
        if (static_cast<int>(b.components.size()) != m.b1) free_part_basis = false;
        if (free_part_basis && m.b1 > 0) {
            std::vector<std::vector<Int>> rows;
            for (const auto& c : b.components) rows.push_back(c.class_free);
            free_part_basis = abs_int(determinant(rows)) == 1;
        }
        if (free_part_basis) {
            // restrict P and surfaces to the free components
            std::vector<std::vector<Int>> p;
            for (const auto& row : m.h2_pairings) {
                std::vector<Int> r;
                for (std::size_t c = 0; c < m.components.size(); ++c) {
                    bool torsion_class = true;
                    for (const auto& v : m.components[c].class_free)
                        torsion_class = torsion_class && v == 0;
                    if (torsion_class) continue;
                    r.push_back(row[c]);
                }
                p.push_back(std::move(r));
            }
            b.h2_pairings = std::move(p);
            b.obr_surfaces.clear();
            b.validate();
            out.push_back(check_rational_invariance(b, m, degree_max, opts));
        } else {
            CorollaryReport rep;
            rep.name = "rational-invariance";
            rep.degree_hi = degree_max;
            rep.instances.push_back(instance(m, "free components do not form a Q-basis", 0,
                                             CorollaryInstance::Status::NotApplicable));
            out.push_back(std::move(rep));
        }
    }
    return out;
}

} // namespace clover

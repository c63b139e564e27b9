#include "clover/relations.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "clover/errors.hpp"
#include "clover/parallel.hpp"

namespace clover {

void RelationSelection::validate() const {
    if (obr && !br)
        throw InputError("relation set: obr requires br (the open quotient is a "
                         "quotient of the closed one)");
}

RelationSelection RelationSelection::parse(const std::string& csv) {
    RelationSelection s{false, false, false, false, false};
    std::stringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok == "as") s.as = true;
        else if (tok == "ihx") s.ihx = true;
        else if (tok == "loop") s.loop = true;
        else if (tok == "br") s.br = true;
        else if (tok == "obr") s.obr = true;
        else if (!tok.empty())
            throw InputError("relation set: unknown selector '" + tok + "'");
    }
    s.validate();
    return s;
}

std::string RelationSelection::to_string() const {
    std::string out;
    auto app = [&](bool on, const char* name) {
        if (!on) return;
        if (!out.empty()) out += ',';
        out += name;
    };
    app(as, "as");
    app(ihx, "ihx");
    app(loop, "loop");
    app(br, "br");
    app(obr, "obr");
    return out;
}

StarGraph::StarGraph(ColoredGraph g, int leg) : base(std::move(g)), star_leg(leg) {
    if (star_leg < 0 || star_leg >= static_cast<int>(base.legs.size()))
        throw InputError("star graph: star leg index out of range");
    if (!base.legs[static_cast<std::size_t>(star_leg)].is_single() ||
        base.legs[static_cast<std::size_t>(star_leg)].sole_color() != kStarColor)
        throw InputError("star graph: distinguished leg is not colored '*'");
}

StarGraph StarGraph::from_graph(const ColoredGraph& g) {
    int star = -1;
    for (int j = 0; j < static_cast<int>(g.legs.size()); ++j) {
        const auto& l = g.legs[static_cast<std::size_t>(j)];
        if (l.is_single() && l.sole_color() == kStarColor) {
            if (star >= 0) throw InputError("star graph: more than one '*' leg");
            star = j;
        }
    }
    if (star < 0) throw InputError("star graph: no '*' leg found");
    return StarGraph(g, star);
}

namespace {

// Rebuilds a graph from a permutation "new slot -> old half-edge" on two
// vertices (all other half-edges keep their ids).
ColoredGraph reconnect(const ColoredGraph& g, int u, int v,
                       const std::array<int, 3>& slots_u,
                       const std::array<int, 3>& slots_v) {
    std::vector<int> old_of(static_cast<std::size_t>(g.half_edge_count()));
    for (int h = 0; h < g.half_edge_count(); ++h) old_of[static_cast<std::size_t>(h)] = h;
    for (int s = 0; s < 3; ++s) {
        old_of[static_cast<std::size_t>(3 * u + s)] = slots_u[static_cast<std::size_t>(s)];
        old_of[static_cast<std::size_t>(3 * v + s)] = slots_v[static_cast<std::size_t>(s)];
    }
    std::vector<int> new_of(old_of.size());
    for (std::size_t q = 0; q < old_of.size(); ++q)
        new_of[static_cast<std::size_t>(old_of[q])] = static_cast<int>(q);
    ColoredGraph out;
    out.trivalent_count = g.trivalent_count;
    out.legs = g.legs;
    out.mate.resize(g.mate.size());
    for (std::size_t q = 0; q < out.mate.size(); ++q)
        out.mate[q] = new_of[static_cast<std::size_t>(
            g.mate[static_cast<std::size_t>(old_of[q])])];
    return out;
}

void dedup(std::vector<DiagramVector>& rels) {
    std::set<std::string> seen;
    std::vector<DiagramVector> out;
    for (auto& r : rels) {
        if (r.is_zero()) continue;
        r.normalize_sign();
        if (seen.insert(r.to_string()).second) out.push_back(std::move(r));
    }
    rels = std::move(out);
}

std::vector<CanonicalGraph> all_classes(const GeneratorBasis& basis) {
    std::vector<CanonicalGraph> all = basis.generators;
    all.insert(all.end(), basis.degenerates.begin(), basis.degenerates.end());
    return all;
}

} // namespace

std::vector<DiagramVector> ihx_relations(const GeneratorBasis& basis) {
    auto classes = all_classes(basis);
    std::vector<std::vector<DiagramVector>> per_class(classes.size());
    parallel_for(classes.size(), [&](std::size_t i) {
        ColoredGraph g = decode_key(classes[i].key);
        for (int e = 0; e < g.slot_count(); ++e) {
            int e2 = g.mate[static_cast<std::size_t>(e)];
            if (e2 < e || e2 >= g.slot_count()) continue; // visit each edge once
            int u = e / 3, v = e2 / 3;
            if (u == v) continue; // loop edges carry no IHX
            // counterclockwise orders (e,a,b) at u and (e',c,d) at v
            int a = 3 * u + (e % 3 + 1) % 3, b = 3 * u + (e % 3 + 2) % 3;
            int c = 3 * v + (e2 % 3 + 1) % 3, d = 3 * v + (e2 % 3 + 2) % 3;
            DiagramVector rel;
            rel += expand(g); // the I term, already single-colored
            rel -= expand(reconnect(g, u, v, {e, a, c}, {e2, b, d})); // H
            rel += expand(reconnect(g, u, v, {e, a, d}, {e2, b, c})); // X
            if (!rel.is_zero()) per_class[i].push_back(std::move(rel));
        }
    });
    std::vector<DiagramVector> rels;
    for (auto& chunk : per_class)
        for (auto& r : chunk) rels.push_back(std::move(r));
    dedup(rels);
    return rels;
}

std::vector<DiagramVector> loop_relations(const GeneratorBasis& basis) {
    std::vector<DiagramVector> rels;
    for (const auto& cls : all_classes(basis)) {
        ColoredGraph g = decode_key(cls.key);
        if (!g.has_loop_edge()) continue;
        DiagramVector rel;
        rel.add_term(cls, g.trivalent_count, 1);
        if (!rel.is_zero()) rels.push_back(std::move(rel));
    }
    dedup(rels);
    return rels;
}

DiagramVector bracket_closed(const StarGraph& g, int h2_row, const ManifoldModel& m) {
    if (h2_row < 0 || h2_row >= static_cast<int>(m.h2_pairings.size()))
        throw InputError("bracket: H2 row out of range");
    DiagramVector out;
    for (int l = 0; l < static_cast<int>(g.base.legs.size()); ++l) {
        if (l == g.star_leg) continue;
        const std::string& color = g.base.legs[static_cast<std::size_t>(l)].sole_color();
        int ci = m.component_index(color);
        if (ci < 0) throw InputError("bracket: leg color '" + color + "' is not a component");
        const Int& coeff = m.h2_pairings[static_cast<std::size_t>(h2_row)][static_cast<std::size_t>(ci)];
        if (coeff == 0) continue;
        out += coeff * expand(glue_legs(g.base, g.star_leg, l));
    }
    return out;
}

DiagramVector bracket_open(const StarGraph& g, const std::vector<Int>& kernel,
                           const std::vector<Int>& pairing, const ManifoldModel& m) {
    if (kernel.size() != m.components.size() || pairing.size() != m.components.size())
        throw InputError("bracket: vector length does not match component count");
    if (!m.is_nullhomologous(kernel))
        throw InputError("bracket: kernel combination is not nullhomologous");
    LegLabel label;
    for (std::size_t c = 0; c < kernel.size(); ++c)
        label.add(m.components[c].name, kernel[c]);
    if (label.empty()) throw InputError("bracket: kernel combination is zero");
    DiagramVector out = expand(recolor_leg(g.base, g.star_leg, label));
    for (int l = 0; l < static_cast<int>(g.base.legs.size()); ++l) {
        if (l == g.star_leg) continue;
        const std::string& color = g.base.legs[static_cast<std::size_t>(l)].sole_color();
        int ci = m.component_index(color);
        if (ci < 0) throw InputError("bracket: leg color '" + color + "' is not a component");
        const Int& coeff = pairing[static_cast<std::size_t>(ci)];
        if (coeff == 0) continue;
        out += coeff * expand(glue_legs(g.base, g.star_leg, l));
    }
    return out;
}

namespace {

std::vector<DiagramVector> bracket_family(const GeneratorBasis& star_basis,
                                          const ManifoldModel& m, bool open) {
    auto classes = all_classes(star_basis);
    std::vector<std::vector<DiagramVector>> per_class(classes.size());
    parallel_for(classes.size(), [&](std::size_t i) {
        StarGraph sg = StarGraph::from_graph(decode_key(classes[i].key));
        if (!open) {
            for (int s = 0; s < static_cast<int>(m.h2_pairings.size()); ++s) {
                DiagramVector v = bracket_closed(sg, s, m);
                if (!v.is_zero()) per_class[i].push_back(std::move(v));
            }
        } else {
            for (const auto& surf : m.obr_surfaces) {
                DiagramVector v = bracket_open(sg, surf.kernel, surf.pairing, m);
                if (!v.is_zero()) per_class[i].push_back(std::move(v));
            }
        }
    });
    std::vector<DiagramVector> rels;
    for (auto& chunk : per_class)
        for (auto& r : chunk) rels.push_back(std::move(r));
    dedup(rels);
    return rels;
}

} // namespace

std::vector<DiagramVector> br_relations(const GeneratorBasis& star_basis,
                                        const ManifoldModel& m) {
    return bracket_family(star_basis, m, false);
}

std::vector<DiagramVector> obr_relations(const GeneratorBasis& star_basis,
                                         const ManifoldModel& m) {
    return bracket_family(star_basis, m, true);
}

GeneratorBasis star_basis(int degree, const ManifoldModel& m, EnumerationOptions opts) {
    opts.with_star = true;
    return enumerate_basis(degree, m.alphabet(), opts);
}

RelationBundle build_relations(const ManifoldModel& m, int degree,
                               const RelationSelection& sel,
                               const EnumerationOptions& opts) {
    sel.validate();
    if (sel.br || sel.obr) {
        if (!validate_spanning(m))
            throw ModelError("model link is not H1-spanning");
    }
    RelationBundle out;
    out.basis = enumerate_basis(degree, m.alphabet(), opts);
    if (sel.ihx) {
        auto r = ihx_relations(out.basis);
        out.relations.insert(out.relations.end(), std::make_move_iterator(r.begin()),
                             std::make_move_iterator(r.end()));
    }
    if (sel.loop) {
        auto r = loop_relations(out.basis);
        out.relations.insert(out.relations.end(), std::make_move_iterator(r.begin()),
                             std::make_move_iterator(r.end()));
    }
    if (sel.br || sel.obr) {
        GeneratorBasis stars = star_basis(degree, m, opts);
        if (sel.br) {
            auto r = br_relations(stars, m);
            out.relations.insert(out.relations.end(), std::make_move_iterator(r.begin()),
                                 std::make_move_iterator(r.end()));
        }
        if (sel.obr) {
            auto r = obr_relations(stars, m);
            out.relations.insert(out.relations.end(), std::make_move_iterator(r.begin()),
                                 std::make_move_iterator(r.end()));
        }
    }
    return out;
}

} // namespace clover

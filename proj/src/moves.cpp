#include "clover/moves.hpp"

#include <algorithm>
#include <sstream>

#include "clover/errors.hpp"

namespace clover {

Move Move::m1(const std::string& src, const std::string& tgt, int sign) {
    if (src == tgt) throw InputError("m1: source and target must differ");
    if (sign != 1 && sign != -1) throw InputError("m1: orientation must be +1 or -1");
    Move mv;
    mv.kind = Kind::M1;
    mv.comp_a = src;
    mv.comp_b = tgt;
    mv.sign = sign;
    return mv;
}

Move Move::m2(const std::string& comp, int epsilon) {
    if (epsilon != 1 && epsilon != -1) throw InputError("m2: epsilon must be +1 or -1");
    Move mv;
    mv.kind = Kind::M2;
    mv.comp_a = comp;
    mv.sign = epsilon;
    return mv;
}

Move Move::m3_insert(const std::string& name, std::vector<Int> pairing) {
    Move mv;
    mv.kind = Kind::M3Insert;
    mv.comp_a = name;
    mv.pairing = std::move(pairing);
    return mv;
}

Move Move::m3_delete(const std::string& name, std::vector<Int> pairing) {
    Move mv;
    mv.kind = Kind::M3Delete;
    mv.comp_a = name;
    mv.pairing = std::move(pairing);
    return mv;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, sep)) out.push_back(tok);
    return out;
}

int parse_sign(const std::string& s) {
    if (s == "+1" || s == "+" || s == "1") return 1;
    if (s == "-1" || s == "-") return -1;
    throw InputError("move: expected +1 or -1, got '" + s + "'");
}

std::vector<Int> parse_pairing(const std::string& s, const ManifoldModel& m) {
    std::vector<Int> out(m.components.size(), 0);
    for (const auto& item : split(s, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InputError("move: pairing entry '" + item + "' is not name=value");
        std::string name = item.substr(0, eq);
        int ci = m.component_index(name);
        if (ci < 0) throw InputError("move: unknown component '" + name + "'");
        out[static_cast<std::size_t>(ci)] = Int(item.substr(eq + 1));
    }
    return out;
}

} // namespace

Move Move::parse(const std::string& text, const ManifoldModel& m) {
    auto parts = split(text, ':');
    if (parts.empty()) throw InputError("move: empty specification");
    if (parts[0] == "m1") {
        if (parts.size() != 4) throw InputError("move: m1 needs m1:<src>:<tgt>:<+1|-1>");
        return m1(parts[1], parts[2], parse_sign(parts[3]));
    }
    if (parts[0] == "m2") {
        if (parts.size() != 3) throw InputError("move: m2 needs m2:<comp>:<+1|-1>");
        return m2(parts[1], parse_sign(parts[2]));
    }
    if (parts[0] == "m3") {
        if (parts.size() != 3 && parts.size() != 4)
            throw InputError("move: m3 needs m3:<insert|delete>:<name>[:<pairing>]");
        std::vector<Int> pairing;
        if (parts.size() == 4) pairing = parse_pairing(parts[3], m);
        if (parts[1] == "insert") return m3_insert(parts[2], std::move(pairing));
        if (parts[1] == "delete") return m3_delete(parts[2], std::move(pairing));
        throw InputError("move: m3 direction must be insert or delete");
    }
    throw InputError("move: unknown kind '" + parts[0] + "'");
}

std::string Move::to_string() const {
    switch (kind) {
        case Kind::M1:
            return "m1:" + comp_a + ":" + comp_b + ":" + (sign > 0 ? "+1" : "-1");
        case Kind::M2:
            return "m2:" + comp_a + ":" + (sign > 0 ? "+1" : "-1");
        case Kind::M3Insert: return "m3:insert:" + comp_a;
        case Kind::M3Delete: return "m3:delete:" + comp_a;
    }
    return "?";
}

std::string band_sum_name(const std::string& a, const std::string& b, int sign) {
    return a + "#" + (sign < 0 ? "~" : "") + b;
}

ManifoldModel apply_move_to_model(const ManifoldModel& m, const Move& mv) {
    ManifoldModel out = m;
    switch (mv.kind) {
        case Move::Kind::M1: {
            int i = m.component_index(mv.comp_a);
            int j = m.component_index(mv.comp_b);
            if (i < 0 || j < 0) throw InputError("m1: unknown component");
            if (i == j) throw InputError("m1: source equals target");
            auto& ci = out.components[static_cast<std::size_t>(i)];
            const auto& cj = m.components[static_cast<std::size_t>(j)];
            std::string new_name = band_sum_name(mv.comp_a, mv.comp_b, mv.sign);
            if (m.component_index(new_name) >= 0)
                throw InputError("m1: band-sum name '" + new_name + "' already in use");
            ci.name = new_name;
            for (int f = 0; f < m.b1; ++f)
                ci.class_free[static_cast<std::size_t>(f)] +=
                    mv.sign * cj.class_free[static_cast<std::size_t>(f)];
            for (std::size_t t = 0; t < m.torsion.size(); ++t) {
                ci.class_torsion[t] += mv.sign * cj.class_torsion[t];
                ci.class_torsion[t] = ((ci.class_torsion[t] % m.torsion[t]) + m.torsion[t]) %
                                      m.torsion[t];
            }
            for (auto& row : out.h2_pairings)
                row[static_cast<std::size_t>(i)] += mv.sign * row[static_cast<std::size_t>(j)];
            for (auto& s : out.obr_surfaces) {
                // [b_i] = [b_i'] - sign [b_j]: the cycle keeps its b_i'
                // coefficient and compensates on b_j
                s.kernel[static_cast<std::size_t>(j)] -=
                    mv.sign * s.kernel[static_cast<std::size_t>(i)];
                s.pairing[static_cast<std::size_t>(i)] +=
                    mv.sign * s.pairing[static_cast<std::size_t>(j)];
            }
            break;
        }
        case Move::Kind::M2: {
            int i = m.component_index(mv.comp_a);
            if (i < 0) throw InputError("m2: unknown component");
            out.components[static_cast<std::size_t>(i)].framing += mv.sign;
            break;
        }
        case Move::Kind::M3Insert: {
            if (m.component_index(mv.comp_a) >= 0)
                throw InputError("m3 insert: component '" + mv.comp_a + "' already exists");
            if (!mv.pairing.empty() && mv.pairing.size() != m.components.size())
                throw InputError("m3 insert: pairing vector length mismatch");
            LinkComponent c;
            c.name = mv.comp_a;
            c.class_free.assign(static_cast<std::size_t>(m.b1), 0);
            c.class_torsion.assign(m.torsion.size(), 0);
            c.framing = 0;
            out.components.push_back(std::move(c));
            for (auto& row : out.h2_pairings) row.push_back(0);
            for (auto& s : out.obr_surfaces) {
                s.kernel.push_back(0);
                s.pairing.push_back(0);
            }
            ObrSurface s;
            s.kernel.assign(out.components.size(), 0);
            s.kernel.back() = 1;
            s.pairing = mv.pairing.empty() ? std::vector<Int>(m.components.size(), 0)
                                           : mv.pairing;
            s.pairing.push_back(0); // zero-framed null-homologous: self-pairing 0
            out.obr_surfaces.push_back(std::move(s));
            break;
        }
        case Move::Kind::M3Delete: {
            int i = m.component_index(mv.comp_a);
            if (i < 0) throw InputError("m3 delete: unknown component");
            const auto& c = m.components[static_cast<std::size_t>(i)];
            for (const auto& v : c.class_free)
                if (v != 0) throw InputError("m3 delete: component class is not zero");
            for (std::size_t t = 0; t < m.torsion.size(); ++t)
                if (c.class_torsion[t] % m.torsion[t] != 0)
                    throw InputError("m3 delete: component class is not zero");
            if (c.framing != 0) throw InputError("m3 delete: component is not zero-framed");
            for (const auto& row : m.h2_pairings)
                if (row[static_cast<std::size_t>(i)] != 0)
                    throw InputError("m3 delete: H2 pairs nontrivially with a "
                                     "null-homologous component");
            std::vector<Int> pv = mv.pairing.empty()
                                      ? std::vector<Int>(m.components.size(), 0)
                                      : mv.pairing;
            if (pv.size() != m.components.size())
                throw InputError("m3 delete: pairing vector length mismatch");
            if (pv[static_cast<std::size_t>(i)] != 0)
                throw InputError("m3 delete: self-pairing must be zero");
            auto drop = [&](std::vector<Int>& vec) { vec.erase(vec.begin() + i); };
            out.components.erase(out.components.begin() + i);
            for (auto& row : out.h2_pairings) drop(row);
            std::vector<ObrSurface> kept;
            for (auto& s : out.obr_surfaces) {
                Int kappa = s.kernel[static_cast<std::size_t>(i)];
                if (kappa != 0) {
                    // replace the cycle by one avoiding the deleted component:
                    // its surface changes by kappa copies of the move's surface
                    s.kernel[static_cast<std::size_t>(i)] = 0;
                    for (std::size_t c2 = 0; c2 < s.pairing.size(); ++c2)
                        s.pairing[c2] -= kappa * pv[c2];
                }
                drop(s.kernel);
                drop(s.pairing);
                bool nonzero = false;
                for (const auto& v : s.kernel) nonzero = nonzero || v != 0;
                if (nonzero) kept.push_back(std::move(s));
            }
            out.obr_surfaces = std::move(kept);
            break;
        }
    }
    out.validate();
    return out;
}

DiagramVector recolor_expand(const DiagramVector& v, const std::string& from,
                             const LegLabel& to) {
    DiagramVector out;
    for (const auto& [key, t] : v.terms()) {
        ColoredGraph g = decode_key(key);
        for (int j = 0; j < static_cast<int>(g.legs.size()); ++j) {
            const auto& l = g.legs[static_cast<std::size_t>(j)];
            if (l.is_single() && l.sole_color() == from)
                g.legs[static_cast<std::size_t>(j)] = to;
        }
        out += expand(g, t.coeff);
    }
    return out;
}

namespace {

void pairings_rec(const std::vector<int>& legs, std::size_t first,
                  std::vector<std::pair<int, int>>& cur,
                  std::vector<std::vector<std::pair<int, int>>>& out,
                  std::vector<char>& used) {
    while (first < legs.size() && used[first]) ++first;
    if (first >= legs.size()) {
        out.push_back(cur);
        return;
    }
    used[first] = 1;
    // leave legs[first] unpaired
    pairings_rec(legs, first + 1, cur, out, used);
    // or pair it with any later unused leg
    for (std::size_t j = first + 1; j < legs.size(); ++j) {
        if (used[j]) continue;
        used[j] = 1;
        cur.push_back({legs[first], legs[j]});
        pairings_rec(legs, first + 1, cur, out, used);
        cur.pop_back();
        used[j] = 0;
    }
    used[first] = 0;
}

} // namespace

DiagramVector apply_m2(const DiagramVector& v, const std::string& comp, int epsilon) {
    if (epsilon != 1 && epsilon != -1) throw InputError("m2: epsilon must be +1 or -1");
    DiagramVector out;
    for (const auto& [key, t] : v.terms()) {
        ColoredGraph g = decode_key(key);
        std::vector<int> legs = g.legs_with_color(comp);
        std::vector<std::vector<std::pair<int, int>>> pairings;
        std::vector<std::pair<int, int>> cur;
        std::vector<char> used(legs.size(), 0);
        pairings_rec(legs, 0, cur, pairings, used);
        for (const auto& pr : pairings) {
            Int coeff = t.coeff;
            if (epsilon < 0 && pr.size() % 2 == 1) coeff = -coeff;
            out += expand(glue_leg_pairs(g, pr), coeff);
        }
    }
    return out;
}

DiagramVector eliminate_color(const DiagramVector& v, const std::string& comp,
                              const std::vector<Int>& pairing, const ManifoldModel& m) {
    if (pairing.size() != m.components.size())
        throw InputError("eliminate: pairing vector length mismatch");
    DiagramVector out;
    // worklist of terms still carrying comp-colored legs
    std::vector<std::pair<ColoredGraph, Int>> work;
    for (const auto& [key, t] : v.terms()) work.push_back({decode_key(key), t.coeff});
    while (!work.empty()) {
        auto [g, coeff] = std::move(work.back());
        work.pop_back();
        std::vector<int> comp_legs = g.legs_with_color(comp);
        if (comp_legs.empty()) {
            out += expand(g, coeff);
            continue;
        }
        int star = comp_legs.front(); // leftmost-first elimination order
        for (int l = 0; l < static_cast<int>(g.legs.size()); ++l) {
            if (l == star) continue;
            const std::string& color = g.legs[static_cast<std::size_t>(l)].sole_color();
            int ci = m.component_index(color);
            Int w = (color == comp) ? Int(0)
                                    : (ci >= 0 ? pairing[static_cast<std::size_t>(ci)]
                                               : throw InputError("eliminate: unknown color '" +
                                                                  color + "'"));
            if (w == 0) continue;
            work.push_back({glue_legs(g, star, l), -coeff * w});
        }
    }
    return out;
}

DiagramVector apply_move(const DiagramVector& v, const Move& mv,
                         const ManifoldModel& source, const ManifoldModel& target,
                         bool inverse) {
    switch (mv.kind) {
        case Move::Kind::M1: {
            std::string band = band_sum_name(mv.comp_a, mv.comp_b, mv.sign);
            if (!inverse) {
                LegLabel to(band);
                to.add(mv.comp_b, -mv.sign);
                return recolor_expand(v, mv.comp_a, to);
            }
            LegLabel to(mv.comp_a);
            to.add(mv.comp_b, mv.sign);
            return recolor_expand(v, band, to);
        }
        case Move::Kind::M2:
            return apply_m2(v, mv.comp_a, inverse ? -mv.sign : mv.sign);
        case Move::Kind::M3Insert: {
            if (!inverse) return v; // inclusion over the extended alphabet
            int i = target.component_index(mv.comp_a);
            if (i < 0) throw InputError("m3: component missing from target model");
            std::vector<Int> pv = mv.pairing.empty()
                                      ? std::vector<Int>(source.components.size(), 0)
                                      : mv.pairing;
            pv.resize(target.components.size(), 0);
            return eliminate_color(v, mv.comp_a, pv, target);
        }
        case Move::Kind::M3Delete: {
            if (inverse) return v;
            std::vector<Int> pv = mv.pairing.empty()
                                      ? std::vector<Int>(source.components.size(), 0)
                                      : mv.pairing;
            return eliminate_color(v, mv.comp_a, pv, source);
        }
    }
    throw std::logic_error("apply_move: unreachable");
}

namespace {

DiagramVector unit_vector(const std::string& key, bool degenerate) {
    DiagramVector v;
    ColoredGraph g = decode_key(key);
    v.add_term({key, degenerate}, g.trivalent_count, 1);
    return v;
}

std::vector<std::vector<Rational>> rational_move_matrix(
    const Move& mv, const ManifoldModel& src, const ManifoldModel& tgt, bool inverse,
    const GradedQuotient& qsrc, const GradedQuotient& qtgt) {
    const auto& from = inverse ? qtgt : qsrc;
    const auto& to = inverse ? qsrc : qtgt;
    std::unordered_map<std::string, std::size_t> to_row;
    for (std::size_t i = 0; i < to.basis_representatives.size(); ++i)
        to_row[to.basis_representatives[i]] = i;
    std::vector<std::vector<Rational>> mat(
        to.basis_representatives.size(),
        std::vector<Rational>(from.basis_representatives.size(), Rational(0)));
    for (std::size_t j = 0; j < from.basis_representatives.size(); ++j) {
        DiagramVector e = unit_vector(from.basis_representatives[j], false);
        DiagramVector img = apply_move(e, mv, src, tgt, inverse);
        Coordinates coords = reduce_to_normal_form(img, to);
        for (const auto& [key, val] : coords.entries) {
            auto it = to_row.find(key);
            if (it == to_row.end())
                throw std::logic_error("induced matrix: coordinate outside complement");
            mat[it->second][j] = val;
        }
    }
    return mat;
}

} // namespace

IntegerMatrix induced_matrix(const Move& mv, int degree, const ManifoldModel& src,
                             const ManifoldModel& tgt, const EnumerationOptions& opts) {
    RelationBundle bs = build_relations(src, degree, RelationSelection::for_ao(), opts);
    RelationBundle bt = build_relations(tgt, degree, RelationSelection::for_ao(), opts);
    GradedQuotient qs = present_quotient(bs.basis, bs.relations, Ring::Q);
    GradedQuotient qt = present_quotient(bt.basis, bt.relations, Ring::Q);
    auto mat = rational_move_matrix(mv, src, tgt, false, qs, qt);
    IntegerMatrix out(static_cast<int>(mat.size()),
                      static_cast<int>(mat.empty() ? qs.basis_representatives.size()
                                                   : mat[0].size()));
    for (std::size_t r = 0; r < mat.size(); ++r)
        for (std::size_t c = 0; c < mat[r].size(); ++c) {
            if (mat[r][c] == 0) continue;
            if (boost::multiprecision::denominator(mat[r][c]) != 1)
                throw InputError("induced matrix has a non-integral entry");
            out.set(static_cast<int>(r), static_cast<int>(c),
                    Int(boost::multiprecision::numerator(mat[r][c])));
        }
    return out;
}

bool MoveReport::ok() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string MoveReport::to_text() const {
    std::ostringstream out;
    out << "move " << move.to_string() << " degree " << degree << "\n";
    for (const auto& c : checks) {
        out << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.name;
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << "\n";
    }
    return out.str();
}

MoveReport verify_isomorphism(const Move& mv, int degree, const ManifoldModel& src,
                              const EnumerationOptions& opts) {
    MoveReport rep;
    rep.move = mv;
    rep.degree = degree;
    ManifoldModel tgt = apply_move_to_model(src, mv);

    RelationBundle bs = build_relations(src, degree, RelationSelection::for_ao(), opts);
    RelationBundle bt = build_relations(tgt, degree, RelationSelection::for_ao(), opts);
    GradedQuotient zs = present_quotient(bs.basis, bs.relations, Ring::Z);
    GradedQuotient zt = present_quotient(bt.basis, bt.relations, Ring::Z);

    // (a) relations map to relations, both directions
    {
        long long bad = 0;
        for (const auto& r : bs.relations) {
            DiagramVector img = apply_move(r, mv, src, tgt, false);
            if (!reduce_to_normal_form(img, zt).is_zero()) ++bad;
        }
        for (const auto& r : bt.relations) {
            DiagramVector img = apply_move(r, mv, src, tgt, true);
            if (!reduce_to_normal_form(img, zs).is_zero()) ++bad;
        }
        rep.checks.push_back({"well-defined (relations map to relations)", bad == 0,
                              bad ? std::to_string(bad) + " relation images escape" : ""});
    }

    // (b) forward then inverse is the identity on quotient coordinates
    {
        long long bad = 0;
        auto round_trip = [&](const GeneratorBasis& basis, const GradedQuotient& q,
                              bool start_inverse) {
            std::vector<CanonicalGraph> all = basis.generators;
            all.insert(all.end(), basis.degenerates.begin(), basis.degenerates.end());
            for (const auto& cls : all) {
                DiagramVector e = unit_vector(cls.key, cls.degenerate);
                DiagramVector there = apply_move(e, mv, src, tgt, start_inverse);
                DiagramVector back = apply_move(there, mv, src, tgt, !start_inverse);
                if (!reduce_to_normal_form(back - e, q).is_zero()) ++bad;
            }
        };
        round_trip(bs.basis, zs, false);
        round_trip(bt.basis, zt, true);
        rep.checks.push_back({"round trip = identity on quotient coordinates", bad == 0,
                              bad ? std::to_string(bad) + " generators fail" : ""});
    }

    // (c) quotient invariants agree
    {
        bool same = zs.free_rank == zt.free_rank && zs.torsion == zt.torsion;
        std::ostringstream d;
        d << "source rank " << zs.free_rank << ", target rank " << zt.free_rank;
        rep.checks.push_back({"free rank and torsion invariant", same, d.str()});
    }
    return rep;
}

} // namespace clover

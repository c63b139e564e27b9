#include "clover/model.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "clover/errors.hpp"
#include "clover/linalg.hpp"
#include "clover/minijson.hpp"

namespace clover {

namespace {

// Stacked class matrix: one row per component, columns are the free part
// followed by the torsion residues; torsion relation rows n_i * e_i appended.
std::vector<std::vector<Int>> class_matrix_with_relations(const ManifoldModel& m) {
    int b1 = m.b1;
    int t = static_cast<int>(m.torsion.size());
    std::vector<std::vector<Int>> rows;
    for (const auto& comp : m.components) {
        std::vector<Int> row(static_cast<std::size_t>(b1 + t), 0);
        for (int i = 0; i < b1; ++i) row[static_cast<std::size_t>(i)] = comp.class_free[static_cast<std::size_t>(i)];
        for (int i = 0; i < t; ++i)
            row[static_cast<std::size_t>(b1 + i)] = comp.class_torsion[static_cast<std::size_t>(i)];
        rows.push_back(std::move(row));
    }
    for (int i = 0; i < t; ++i) {
        std::vector<Int> row(static_cast<std::size_t>(b1 + t), 0);
        row[static_cast<std::size_t>(b1 + i)] = m.torsion[static_cast<std::size_t>(i)];
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

int ManifoldModel::component_index(const std::string& name) const {
    for (std::size_t i = 0; i < components.size(); ++i)
        if (components[i].name == name) return static_cast<int>(i);
    return -1;
}

std::vector<Color> ManifoldModel::alphabet() const {
    std::vector<Color> out;
    for (std::size_t i = 0; i < components.size(); ++i)
        out.push_back({components[i].name, static_cast<int>(i)});
    return out;
}

bool ManifoldModel::is_nullhomologous(const std::vector<Int>& combo) const {
    if (combo.size() != components.size())
        throw ModelError("combination length does not match component count");
    for (int i = 0; i < b1; ++i) {
        Int s = 0;
        for (std::size_t c = 0; c < components.size(); ++c)
            s += combo[c] * components[c].class_free[static_cast<std::size_t>(i)];
        if (s != 0) return false;
    }
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        Int s = 0;
        for (std::size_t c = 0; c < components.size(); ++c)
            s += combo[c] * components[c].class_torsion[i];
        if (s % torsion[i] != 0) return false;
    }
    return true;
}

void ManifoldModel::validate() const {
    if (b1 < 0) throw ModelError("b1 must be nonnegative");
    for (const auto& n : torsion)
        if (n < 2) throw ModelError("torsion invariant factors must be >= 2");
    std::set<std::string> names;
    for (const auto& comp : components) {
        if (comp.name.empty()) throw ModelError("component with empty name");
        if (comp.name == kStarColor)
            throw ModelError("component name '*' is reserved");
        if (!names.insert(comp.name).second)
            throw ModelError("duplicate component name '" + comp.name + "'");
        if (comp.class_free.size() != static_cast<std::size_t>(b1))
            throw ModelError("component '" + comp.name + "': class_free length != b1");
        if (comp.class_torsion.size() != torsion.size())
            throw ModelError("component '" + comp.name + "': class_torsion length mismatch");
    }
    for (const auto& row : h2_pairings)
        if (row.size() != components.size())
            throw ModelError("h2 pairing row length does not match component count");
    if (!h2_complete)
        throw ModelError("h2_complete must be attested true: the brane quotient "
                         "needs a generating set of H2");
    for (const auto& s : obr_surfaces) {
        if (s.kernel.size() != components.size() || s.pairing.size() != components.size())
            throw ModelError("obr surface vector length does not match component count");
        bool nonzero = false;
        for (const auto& v : s.kernel) nonzero = nonzero || v != 0;
        if (!nonzero) throw ModelError("obr surface kernel vector is zero");
        if (!is_nullhomologous(s.kernel))
            throw ModelError("obr surface kernel vector is not nullhomologous");
    }
    // the kernel vectors must generate the nullhomology lattice
    auto lattice = kernel_lattice(*this);
    if (!lattice.empty() || !obr_surfaces.empty()) {
        int nc = static_cast<int>(components.size());
        std::vector<SparseRow> lat_rows, obr_rows;
        for (const auto& v : lattice) {
            SparseRow r;
            for (int c = 0; c < nc; ++c)
                if (v[static_cast<std::size_t>(c)] != 0) r.push_back({c, v[static_cast<std::size_t>(c)]});
            lat_rows.push_back(std::move(r));
        }
        for (const auto& s : obr_surfaces) {
            SparseRow r;
            for (int c = 0; c < nc; ++c)
                if (s.kernel[static_cast<std::size_t>(c)] != 0)
                    r.push_back({c, s.kernel[static_cast<std::size_t>(c)]});
            obr_rows.push_back(std::move(r));
        }
        if (!lattice_equal(hermite_z(lat_rows, nc), hermite_z(obr_rows, nc)))
            throw ModelError("obr surface kernel vectors do not generate the "
                             "nullhomology lattice");
    }
}

bool validate_spanning(const ManifoldModel& m) {
    int dim = m.b1 + static_cast<int>(m.torsion.size());
    if (dim == 0) return true;
    auto rows = class_matrix_with_relations(m);
    std::vector<SparseRow> sparse;
    for (const auto& r : rows) {
        SparseRow sr;
        for (int c = 0; c < dim; ++c)
            if (r[static_cast<std::size_t>(c)] != 0) sr.push_back({c, r[static_cast<std::size_t>(c)]});
        sparse.push_back(std::move(sr));
    }
    Hermite h = hermite_z(std::move(sparse), dim);
    if (h.rank() != dim) return false;
    for (const auto& r : h.rows)
        if (r.front().second != 1) return false;
    return true;
}

std::vector<std::vector<Int>> kernel_lattice(const ManifoldModel& m) {
    int nc = static_cast<int>(m.components.size());
    int t = static_cast<int>(m.torsion.size());
    if (nc == 0) return {};
    // kernel of [classes; torsion relations] restricted to component rows:
    // (a, y) with a*C + y*diag(n) = 0  <=>  a is nullhomologous
    auto rows = class_matrix_with_relations(m);
    auto full = left_kernel(rows, m.b1 + t);
    // project to the component coordinates and re-extract a lattice basis
    std::vector<SparseRow> proj;
    for (const auto& v : full) {
        SparseRow r;
        for (int c = 0; c < nc; ++c)
            if (v[static_cast<std::size_t>(c)] != 0) r.push_back({c, v[static_cast<std::size_t>(c)]});
        if (!r.empty()) proj.push_back(std::move(r));
    }
    Hermite h = hermite_z(std::move(proj), nc);
    std::vector<std::vector<Int>> basis;
    for (const auto& r : h.rows) {
        std::vector<Int> v(static_cast<std::size_t>(nc), 0);
        for (const auto& [c, x] : r) v[static_cast<std::size_t>(c)] = x;
        basis.push_back(std::move(v));
    }
    return basis;
}

ManifoldModel closed_rational_model(int b1, const std::vector<Int>& torsion) {
    if (b1 < 0) throw ModelError("b1 must be nonnegative");
    ManifoldModel m;
    m.b1 = b1;
    m.torsion = torsion;
    int t = static_cast<int>(torsion.size());
    for (int i = 0; i < b1; ++i) {
        LinkComponent c;
        c.name = "x" + std::to_string(i + 1);
        c.class_free.assign(static_cast<std::size_t>(b1), 0);
        c.class_free[static_cast<std::size_t>(i)] = 1;
        c.class_torsion.assign(static_cast<std::size_t>(t), 0);
        m.components.push_back(std::move(c));
    }
    for (int i = 0; i < t; ++i) {
        LinkComponent c;
        c.name = "t" + std::to_string(i + 1);
        c.class_free.assign(static_cast<std::size_t>(b1), 0);
        c.class_torsion.assign(static_cast<std::size_t>(t), 0);
        c.class_torsion[static_cast<std::size_t>(i)] = 1;
        m.components.push_back(std::move(c));
    }
    for (int s = 0; s < b1; ++s) {
        std::vector<Int> row(m.components.size(), 0);
        row[static_cast<std::size_t>(s)] = 1; // dual surface to the s-th free component
        m.h2_pairings.push_back(std::move(row));
    }
    for (int i = 0; i < t; ++i) {
        ObrSurface s;
        s.kernel.assign(m.components.size(), 0);
        s.kernel[static_cast<std::size_t>(b1 + i)] = torsion[static_cast<std::size_t>(i)];
        s.pairing.assign(m.components.size(), 0);
        m.obr_surfaces.push_back(std::move(s));
    }
    m.validate();
    return m;
}

// ---------------------------------------------------------------------------
// File format

namespace {

std::vector<Int> int_array(const mj::Value& v) {
    std::vector<Int> out;
    for (const auto& item : v.as_array()) out.push_back(item.as_integer());
    return out;
}

void reject_unknown(const mj::Value& obj, const std::vector<std::string>& known,
                    const std::string& where) {
    for (const auto& [key, val] : obj.members) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ParseError("model: unknown key \"" + key + "\" in " + where,
                             val.line, val.column);
    }
}

// name -> value object over the model's components
std::vector<Int> component_vector(const mj::Value& obj, const ManifoldModel& m,
                                  const std::string& where) {
    std::vector<Int> out(m.components.size(), 0);
    for (const auto& [name, val] : obj.members) {
        int idx = m.component_index(name);
        if (idx < 0)
            throw ParseError("model: unknown component \"" + name + "\" in " + where,
                             val.line, val.column);
        out[static_cast<std::size_t>(idx)] = val.as_integer();
    }
    return out;
}

} // namespace

ManifoldModel load_model(const std::string& json_text) {
    mj::Value root = mj::parse(json_text);
    reject_unknown(root, {"b1", "torsion", "link", "h2_generators", "h2_complete",
                          "obr_surfaces"},
                   "model");
    ManifoldModel m;
    Int b1 = root.at("b1").as_integer();
    if (b1 < 0 || b1 > 64) throw ModelError("b1 out of supported range");
    m.b1 = static_cast<int>(b1);
    if (root.has("torsion")) m.torsion = int_array(root.at("torsion"));
    for (const auto& cv : root.at("link").as_array()) {
        reject_unknown(cv, {"name", "class_free", "class_torsion", "framing"}, "link component");
        LinkComponent c;
        c.name = cv.at("name").as_string();
        if (cv.has("class_free")) c.class_free = int_array(cv.at("class_free"));
        else c.class_free.assign(static_cast<std::size_t>(m.b1), 0);
        if (cv.has("class_torsion")) c.class_torsion = int_array(cv.at("class_torsion"));
        else c.class_torsion.assign(m.torsion.size(), 0);
        if (cv.has("framing")) c.framing = cv.at("framing").as_integer();
        m.components.push_back(std::move(c));
    }
    if (root.has("h2_generators")) {
        for (const auto& sv : root.at("h2_generators").as_array()) {
            reject_unknown(sv, {"name", "pairing"}, "h2 generator");
            m.h2_pairings.push_back(component_vector(sv.at("pairing"), m, "h2 pairing"));
        }
    }
    m.h2_complete = root.has("h2_complete") ? root.at("h2_complete").as_bool() : false;
    if (root.has("obr_surfaces")) {
        for (const auto& sv : root.at("obr_surfaces").as_array()) {
            reject_unknown(sv, {"kernel", "pairing"}, "obr surface");
            ObrSurface s;
            s.kernel = component_vector(sv.at("kernel"), m, "obr kernel");
            s.pairing = sv.has("pairing")
                            ? component_vector(sv.at("pairing"), m, "obr pairing")
                            : std::vector<Int>(m.components.size(), 0);
            m.obr_surfaces.push_back(std::move(s));
        }
    }
    m.validate();
    return m;
}

ManifoldModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_model(buf.str());
}

std::string save_model(const ManifoldModel& m) {
    std::ostringstream out;
    out << "{\n  \"b1\": " << m.b1 << ",\n  \"torsion\": [";
    for (std::size_t i = 0; i < m.torsion.size(); ++i)
        out << (i ? ", " : "") << m.torsion[i];
    out << "],\n  \"link\": [\n";
    for (std::size_t c = 0; c < m.components.size(); ++c) {
        const auto& comp = m.components[c];
        out << "    { \"name\": " << mj::quote(comp.name) << ", \"class_free\": [";
        for (std::size_t i = 0; i < comp.class_free.size(); ++i)
            out << (i ? ", " : "") << comp.class_free[i];
        out << "], \"class_torsion\": [";
        for (std::size_t i = 0; i < comp.class_torsion.size(); ++i)
            out << (i ? ", " : "") << comp.class_torsion[i];
        out << "], \"framing\": " << comp.framing << " }";
        out << (c + 1 < m.components.size() ? ",\n" : "\n");
    }
    out << "  ],\n  \"h2_generators\": [\n";
    for (std::size_t s = 0; s < m.h2_pairings.size(); ++s) {
        out << "    { \"name\": " << mj::quote("S" + std::to_string(s + 1))
            << ", \"pairing\": {";
        bool first = true;
        for (std::size_t c = 0; c < m.components.size(); ++c) {
            out << (first ? "" : ", ") << mj::quote(m.components[c].name) << ": "
                << m.h2_pairings[s][c];
            first = false;
        }
        out << "} }" << (s + 1 < m.h2_pairings.size() ? ",\n" : "\n");
    }
    out << "  ],\n  \"h2_complete\": " << (m.h2_complete ? "true" : "false")
        << ",\n  \"obr_surfaces\": [\n";
    for (std::size_t s = 0; s < m.obr_surfaces.size(); ++s) {
        const auto& surf = m.obr_surfaces[s];
        out << "    { \"kernel\": {";
        bool first = true;
        for (std::size_t c = 0; c < m.components.size(); ++c) {
            if (surf.kernel[c] == 0) continue;
            out << (first ? "" : ", ") << mj::quote(m.components[c].name) << ": "
                << surf.kernel[c];
            first = false;
        }
        out << "}, \"pairing\": {";
        first = true;
        for (std::size_t c = 0; c < m.components.size(); ++c) {
            if (surf.pairing[c] == 0) continue;
            out << (first ? "" : ", ") << mj::quote(m.components[c].name) << ": "
                << surf.pairing[c];
            first = false;
        }
        out << "} }" << (s + 1 < m.obr_surfaces.size() ? ",\n" : "\n");
    }
    out << "  ]\n}\n";
    return out.str();
}

} // namespace clover

#include "clover/report.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include "clover/errors.hpp"
#include "clover/relations.hpp"

namespace clover {

namespace {

std::string torsion_str(const std::vector<Int>& t) {
    if (t.empty()) return "-";
    std::ostringstream out;
    for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
    return out.str();
}

RankRow make_row(int degree, const std::string& group, const GradedQuotient& q,
                 double ms) {
    RankRow row;
    row.degree = degree;
    row.group = group;
    row.generators = q.generator_count;
    row.relations = q.relation_count;
    row.free_rank = q.free_rank;
    row.torsion = q.torsion;
    row.wall_ms = ms;
    return row;
}

} // namespace

RankTable compute_ranks(const ManifoldModel& m, int degree_max, Ring ring,
                        const EnumerationOptions& opts) {
    RankTable table;
    table.ring = ring;
    ManifoldModel empty = closed_rational_model(0, {});
    struct GroupSpec {
        const char* name;
        RelationSelection sel;
        const ManifoldModel* model;
    };
    GroupSpec specs[] = {
        {"B", RelationSelection::for_b(), &m},
        {"A", RelationSelection::for_a(), &m},
        {"Ao", RelationSelection::for_ao(), &m},
        {"Aphi", RelationSelection::for_b(), &empty},
    };
    for (int d = 0; d <= degree_max; ++d) {
        for (const auto& spec : specs) {
            auto start = std::chrono::steady_clock::now();
            RelationBundle bundle = build_relations(*spec.model, d, spec.sel, opts);
            GradedQuotient q = present_quotient(bundle.basis, bundle.relations, ring);
            double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
            table.rows.push_back(make_row(d, spec.name, q, ms));
        }
    }
    return table;
}

std::string emit_rank_table(const RankTable& t, bool machine, bool timing) {
    std::ostringstream out;
    if (machine) {
        out << "ring=" << (t.ring == Ring::Z ? "z" : "q") << "\n";
        for (const auto& r : t.rows) {
            out << "ranks degree=" << r.degree << " group=" << r.group
                << " generators=" << r.generators << " relations=" << r.relations
                << " free_rank=" << r.free_rank << " torsion=" << torsion_str(r.torsion);
            if (timing) out << " time_ms=" << std::fixed << std::setprecision(1) << r.wall_ms;
            out << "\n";
        }
        return out.str();
    }
    out << "ring: " << (t.ring == Ring::Z ? "Z" : "Q") << "\n";
    out << std::left << std::setw(7) << "degree" << std::setw(6) << "group"
        << std::right << std::setw(11) << "generators" << std::setw(10) << "relations"
        << std::setw(10) << "free_rank" << "  " << std::left << std::setw(12) << "torsion";
    if (timing) out << std::right << std::setw(10) << "time_ms";
    out << "\n";
    for (const auto& r : t.rows) {
        out << std::left << std::setw(7) << r.degree << std::setw(6) << r.group
            << std::right << std::setw(11) << r.generators << std::setw(10) << r.relations
            << std::setw(10) << r.free_rank << "  " << std::left << std::setw(12)
            << torsion_str(r.torsion);
        if (timing)
            out << std::right << std::setw(10) << std::fixed << std::setprecision(1)
                << r.wall_ms;
        out << "\n";
    }
    return out.str();
}

RankTable parse_rank_table_machine(const std::string& text) {
    RankTable t;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "ring=z") {
            t.ring = Ring::Z;
            continue;
        }
        if (tok == "ring=q") {
            t.ring = Ring::Q;
            continue;
        }
        if (tok != "ranks") throw InputError("rank table: unexpected line: " + line);
        RankRow row;
        while (ls >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw InputError("rank table: bad field '" + tok + "'");
            std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "degree") row.degree = std::stoi(val);
            else if (key == "group") row.group = val;
            else if (key == "generators") row.generators = std::stoll(val);
            else if (key == "relations") row.relations = std::stoll(val);
            else if (key == "free_rank") row.free_rank = std::stoll(val);
            else if (key == "torsion") {
                if (val != "-") {
                    std::stringstream ts(val);
                    std::string item;
                    while (std::getline(ts, item, ',')) row.torsion.push_back(Int(item));
                }
            } else if (key == "time_ms") {
                row.wall_ms = std::stod(val);
            } else {
                throw InputError("rank table: unknown field '" + key + "'");
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace clover

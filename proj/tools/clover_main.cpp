// clover: exact graded graph groups of a 3-manifold homology model.
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 resource limit.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "clover/errors.hpp"
#include "clover/linalg.hpp"
#include "clover/moves.hpp"
#include "clover/relations.hpp"
#include "clover/report.hpp"
#include "clover/verification.hpp"

namespace {

using namespace clover;

constexpr int kDefaultDegreeLimit = 4;

struct ModelArgs {
    std::string file;
    std::string rational; // "B1" or "B1,T1,T2,..."
};

void add_model_options(CLI::App* cmd, ModelArgs& args) {
    auto* f = cmd->add_option("--model", args.file, "model file (JSON)");
    auto* r = cmd->add_option(
        "--rational", args.rational,
        "built-in model: b1 followed by torsion factors, e.g. '2' or '0,3'");
    f->excludes(r);
}

ManifoldModel resolve_model(const ModelArgs& args) {
    if (!args.file.empty()) return load_model_file(args.file);
    if (!args.rational.empty()) {
        std::stringstream in(args.rational);
        std::string tok;
        std::vector<Int> parts;
        while (std::getline(in, tok, ',')) parts.push_back(Int(tok));
        if (parts.empty()) throw InputError("--rational: empty specification");
        if (parts[0] < 0 || parts[0] > 16) throw InputError("--rational: bad b1");
        return closed_rational_model(static_cast<int>(parts[0]),
                                     {parts.begin() + 1, parts.end()});
    }
    throw InputError("a model is required: pass --model FILE or --rational SPEC");
}

EnumerationOptions enum_options(int degree, int unsafe_degree, bool connected_only = false) {
    EnumerationOptions opts;
    opts.max_degree = std::max(kDefaultDegreeLimit, unsafe_degree);
    opts.connected_only = connected_only;
    if (degree > opts.max_degree)
        throw ResourceLimitError(
            "degree " + std::to_string(degree) + " exceeds the limit " +
            std::to_string(opts.max_degree) + "; pass --unsafe-degree to raise it");
    return opts;
}

int run(int argc, char** argv) {
    CLI::App app{"clover: exact computations in the graph groups B(b), A(b), Ao(b)"};
    app.require_subcommand(1);

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "list canonical generators");
    int e_degree = 0;
    std::string e_colors;
    bool e_connected = false;
    int e_unsafe = 0;
    enumerate->add_option("--degree", e_degree, "graph degree (trivalent vertices)")
        ->required();
    enumerate->add_option("--colors", e_colors, "comma-separated leg colors");
    enumerate->add_flag("--connected-only", e_connected, "restrict to connected graphs");
    enumerate->add_option("--unsafe-degree", e_unsafe, "raise the degree limit");

    // expand
    auto* expand_cmd = app.add_subcommand(
        "expand", "parse graph notation, print the canonical form and sign");
    std::string x_graph;
    expand_cmd->add_option("graph", x_graph, "graph notation")->required();

    // relations
    auto* relations = app.add_subcommand("relations", "print relation vectors");
    int r_degree = 0;
    std::string r_set = "as,ihx,loop";
    std::string r_dump;
    std::string r_ring = "z";
    int r_unsafe = 0;
    ModelArgs r_model;
    relations->add_option("--degree", r_degree, "graph degree")->required();
    relations->add_option("--set", r_set, "relation families: as,ihx,loop,br,obr");
    relations->add_option("--dump-matrix", r_dump, "write the relation matrix (triplets)");
    relations->add_option("--ring", r_ring, "z or q (matrix layout)");
    relations->add_option("--unsafe-degree", r_unsafe, "raise the degree limit");
    add_model_options(relations, r_model);

    // ranks
    auto* ranks = app.add_subcommand("ranks", "rank/torsion table of B, A, Ao, A(phi)");
    int k_degree_max = 2;
    std::string k_ring = "z";
    bool k_machine = false, k_no_timing = false;
    int k_unsafe = 0;
    ModelArgs k_model;
    ranks->add_option("--degree-max", k_degree_max, "top degree (default 2)");
    ranks->add_option("--ring", k_ring, "z (rank and torsion) or q (rank only)");
    ranks->add_flag("--machine", k_machine, "line-oriented key=value output");
    ranks->add_flag("--no-timing", k_no_timing, "suppress the timing column");
    ranks->add_option("--unsafe-degree", k_unsafe, "raise the degree limit");
    add_model_options(ranks, k_model);

    // move
    auto* move_cmd = app.add_subcommand("move", "apply a spanning-link move");
    std::string m_apply;
    int m_degree = -1;
    bool m_verify = false;
    int m_unsafe = 0;
    ModelArgs m_model;
    move_cmd->add_option("--apply", m_apply, "m1:<src>:<tgt>:<s> | m2:<c>:<s> | "
                                             "m3:<insert|delete>:<name>[:<pairing>]")
        ->required();
    move_cmd->add_option("--degree", m_degree, "degree for --verify");
    move_cmd->add_flag("--verify", m_verify, "check the induced isomorphism");
    move_cmd->add_option("--unsafe-degree", m_unsafe, "raise the degree limit");
    add_model_options(move_cmd, m_model);

    // verify
    auto* verify = app.add_subcommand("verify", "run the corollary suite");
    std::string v_suite = "corollaries";
    int v_degree_max = 2;
    bool v_machine = false;
    int v_unsafe = 0;
    ModelArgs v_model;
    verify->add_option("--suite", v_suite, "suite name (corollaries)");
    verify->add_option("--degree-max", v_degree_max, "top degree (default 2)");
    verify->add_flag("--machine", v_machine, "line-oriented key=value output");
    verify->add_option("--unsafe-degree", v_unsafe, "raise the degree limit");
    add_model_options(verify, v_model);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (enumerate->parsed()) {
        std::vector<std::string> names;
        std::stringstream in(e_colors);
        std::string tok;
        while (std::getline(in, tok, ','))
            if (!tok.empty()) names.push_back(tok);
        EnumerationOptions opts = enum_options(e_degree, e_unsafe, e_connected);
        GeneratorBasis basis = enumerate_basis(e_degree, make_alphabet(names), opts);
        for (const auto& g : basis.generators) std::cout << g.key << "\n";
        for (const auto& g : basis.degenerates)
            std::cout << g.key << "  # degenerate (2G = 0)\n";
        std::cout << "total: " << basis.generators.size() << " generators, "
                  << basis.degenerates.size() << " degenerate\n";
        return 0;
    }

    if (expand_cmd->parsed()) {
        ColoredGraph g = parse_graph(x_graph);
        if (g.all_single_colored()) {
            CanonResult c = canonicalize(g);
            std::cout << "canonical: " << c.graph.key << "\n";
            std::cout << "sign: " << (c.sign > 0 ? "+1" : "-1") << "\n";
            std::cout << "degenerate: " << (c.graph.degenerate ? "yes" : "no") << "\n";
        } else {
            DiagramVector v = clover::expand(g);
            std::cout << "expanded: " << v.to_string() << "\n";
        }
        return 0;
    }

    if (relations->parsed()) {
        ManifoldModel model = resolve_model(r_model);
        RelationSelection sel = RelationSelection::parse(r_set);
        EnumerationOptions opts = enum_options(r_degree, r_unsafe);
        RelationBundle bundle = build_relations(model, r_degree, sel, opts);
        for (const auto& rel : bundle.relations)
            std::cout << rel.to_string() << "\n";
        if (sel.as)
            for (const auto& g : bundle.basis.degenerates)
                std::cout << "+2*(" << g.key << ")\n";
        std::cout << "total: " << bundle.relations.size() << " relation vectors over "
                  << bundle.basis.total() << " generators";
        if (sel.as) std::cout << " (+" << bundle.basis.degenerates.size() << " AS rows)";
        std::cout << "\n";
        if (!r_dump.empty()) {
            Ring ring = (r_ring == "q") ? Ring::Q : Ring::Z;
            IntegerMatrix m = relation_matrix(bundle.basis, bundle.relations, ring);
            std::ofstream out(r_dump);
            if (!out) throw InputError("cannot write " + r_dump);
            out << m.to_triplets();
        }
        return 0;
    }

    if (ranks->parsed()) {
        ManifoldModel model = resolve_model(k_model);
        Ring ring = (k_ring == "q") ? Ring::Q : Ring::Z;
        EnumerationOptions opts = enum_options(k_degree_max, k_unsafe);
        RankTable table = compute_ranks(model, k_degree_max, ring, opts);
        std::cout << emit_rank_table(table, k_machine, !k_no_timing);
        return 0;
    }

    if (move_cmd->parsed()) {
        ManifoldModel model = resolve_model(m_model);
        Move mv = Move::parse(m_apply, model);
        ManifoldModel target = apply_move_to_model(model, mv);
        if (!m_verify) {
            std::cout << save_model(target);
            return 0;
        }
        int degree = m_degree < 0 ? 2 : m_degree;
        EnumerationOptions opts = enum_options(degree, m_unsafe);
        MoveReport report = verify_isomorphism(mv, degree, model, opts);
        std::cout << report.to_text();
        return report.ok() ? 0 : 1;
    }

    if (verify->parsed()) {
        if (v_suite != "corollaries")
            throw InputError("unknown suite '" + v_suite + "'");
        ManifoldModel model = resolve_model(v_model);
        EnumerationOptions opts = enum_options(v_degree_max, v_unsafe);
        auto reports = corollary_suite(model, v_degree_max, opts);
        bool ok = true;
        for (const auto& r : reports) {
            std::cout << (v_machine ? r.to_machine() : r.to_text());
            ok = ok && r.all_applicable_pass();
        }
        std::cout << (ok ? "suite: pass\n" : "suite: FAIL\n");
        return ok ? 0 : 1;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}

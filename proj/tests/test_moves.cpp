#include <doctest.h>

#include <functional>

#include "clover/errors.hpp"
#include "clover/moves.hpp"
#include "test_util.hpp"

using namespace clover;
using namespace clover_test;

TEST_CASE("model moves compose to the identity") {
    ManifoldModel m = closed_rational_model(2, {});
    SUBCASE("framing arithmetic") {
        ManifoldModel r = m;
        r = apply_move_to_model(r, Move::m2("x1", +1));
        r = apply_move_to_model(r, Move::m2("x1", +1));
        r = apply_move_to_model(r, Move::m2("x1", -1));
        r = apply_move_to_model(r, Move::m2("x1", -1));
        CHECK(save_model(r) == save_model(m));
    }
    SUBCASE("band sum then its reverse restores the classes") {
        ManifoldModel r = apply_move_to_model(m, Move::m1("x1", "x2", +1));
        CHECK(r.components[0].name == "x1#x2");
        CHECK(r.components[0].class_free == std::vector<Int>{Int(1), Int(1)});
        ManifoldModel back = apply_move_to_model(r, Move::m1("x1#x2", "x2", -1));
        CHECK(back.components[0].class_free == m.components[0].class_free);
        CHECK(back.components[0].name == "x1#x2#~x2");
    }
    SUBCASE("insert then delete") {
        Move ins = Move::m3_insert("c0");
        ManifoldModel r = apply_move_to_model(m, ins);
        CHECK(r.components.size() == 3);
        CHECK(r.obr_surfaces.size() == 1);
        ManifoldModel back = apply_move_to_model(r, Move::m3_delete("c0"));
        CHECK(save_model(back) == save_model(m));
    }
    SUBCASE("delete requires a zero class") {
        CHECK_THROWS_AS(apply_move_to_model(m, Move::m3_delete("x1")), InputError);
    }
}

TEST_CASE("m1 on vectors: no source legs means no change") {
    ManifoldModel m = closed_rational_model(2, {});
    ManifoldModel t = apply_move_to_model(m, Move::m1("x1", "x2", +1));
    DiagramVector v = expand(y_graph("x2", "x2", "x2"));
    DiagramVector img = apply_move(v, Move::m1("x1", "x2", +1), m, t, false);
    CHECK(img == v);
}

TEST_CASE("m1 substitution round trip is the identity pre-quotient") {
    ManifoldModel m = closed_rational_model(2, {});
    Move mv = Move::m1("x1", "x2", +1);
    ManifoldModel t = apply_move_to_model(m, mv);
    for (const auto& g : {y_graph("x1", "x2", "x2"), y_graph("x1", "x1", "x2"),
                          h_graph("x1", "x1", "x2", "x1")}) {
        DiagramVector v = expand(g);
        DiagramVector img = apply_move(v, mv, m, t, false);
        DiagramVector back = apply_move(img, mv, m, t, true);
        CHECK(back == v);
    }
}

TEST_CASE("m1 forward expands a doubly-colored vertex into four terms") {
    ManifoldModel m = closed_rational_model(2, {});
    Move mv = Move::m1("x1", "x2", +1);
    ManifoldModel t = apply_move_to_model(m, mv);
    DiagramVector v = expand(y_graph("x1", "x1", "x2"));
    DiagramVector img = apply_move(v, mv, m, t, false);
    // hand expansion: (b-x2) in two slots over the Y graph
    DiagramVector want;
    const std::string b = "x1#x2";
    want += expand(y_graph(b, b, "x2"));
    want -= expand(y_graph(b, "x2", "x2"));
    want -= expand(y_graph("x2", b, "x2"));
    want += expand(y_graph("x2", "x2", "x2"));
    CHECK(img == want);
}

TEST_CASE("m2 with zero or one colored leg only recolors") {
    DiagramVector v = expand(y_graph("y", "y", "y"));
    CHECK(apply_m2(v, "x", +1) == v);
    DiagramVector w = expand(y_graph("x", "y", "y"));
    CHECK(apply_m2(w, "x", +1) == w);
}

TEST_CASE("m2 on the H graph with two colored legs") {
    ColoredGraph h = h_graph("x", "y", "x", "y");
    DiagramVector v = expand(h);
    DiagramVector img = apply_m2(v, "x", +1);
    DiagramVector want = v;
    want += expand(glue_legs(h, 0, 2));
    CHECK(img == want);
    DiagramVector img_neg = apply_m2(v, "x", -1);
    DiagramVector want_neg = v;
    want_neg -= expand(glue_legs(h, 0, 2));
    CHECK(img_neg == want_neg);
}

TEST_CASE("m2 composition identity holds raw for every generator, degrees <= 3") {
    std::vector<Color> alphabet = make_alphabet({"x", "y"});
    for (int d = 1; d <= 3; ++d) {
        GeneratorBasis basis = enumerate_basis(d, alphabet);
        std::vector<CanonicalGraph> all = basis.generators;
        all.insert(all.end(), basis.degenerates.begin(), basis.degenerates.end());
        for (const auto& cls : all) {
            DiagramVector v;
            v.add_term(cls, d, 1);
            for (int eps : {+1, -1}) {
                DiagramVector round = apply_m2(apply_m2(v, "x", eps), "x", -eps);
                CHECK(round == v);
            }
        }
    }
}

TEST_CASE("binomial cancellation: sum over even splits vanishes for p >= 1") {
    for (int p = 1; p <= 12; ++p) {
        Int total = 0;
        Int binom = 1;
        for (int b = 0; b <= p; ++b) {
            total += (b % 2 ? -binom : binom);
            binom = binom * (p - b) / (b + 1);
        }
        CHECK(total == 0);
    }
}

TEST_CASE("corrupted m2 (epsilon^p replaced by epsilon) breaks the round trip") {
    // sentinel: with the wrong coefficient the composition identity fails
    auto corrupt_m2 = [](const DiagramVector& v, const std::string& comp, int eps) {
        DiagramVector out;
        for (const auto& [key, t] : v.terms()) {
            ColoredGraph g = decode_key(key);
            std::vector<int> legs = g.legs_with_color(comp);
            // enumerate partial matchings exactly как apply_m2, but weight every
            // nonempty matching by eps instead of eps^pairs
            std::function<void(std::size_t, std::vector<std::pair<int, int>>&,
                               std::vector<char>&)>
                rec = [&](std::size_t first, std::vector<std::pair<int, int>>& cur,
                          std::vector<char>& used) {
                    while (first < legs.size() && used[first]) ++first;
                    if (first >= legs.size()) {
                        Int c = t.coeff;
                        if (!cur.empty() && eps < 0) c = -c;
                        out += expand(glue_leg_pairs(g, cur), c);
                        return;
                    }
                    used[first] = 1;
                    rec(first + 1, cur, used);
                    for (std::size_t j = first + 1; j < legs.size(); ++j) {
                        if (used[j]) continue;
                        used[j] = 1;
                        cur.push_back({legs[first], legs[j]});
                        rec(first + 1, cur, used);
                        cur.pop_back();
                        used[j] = 0;
                    }
                    used[first] = 0;
                };
            std::vector<std::pair<int, int>> cur;
            std::vector<char> used(legs.size(), 0);
            rec(0, cur, used);
        }
        return out;
    };
    // epsilon vs epsilon^p first differ when two glued pairs survive all
    // cancellations; the smallest witness is a disjoint pair of one-leg
    // bubbles (degree 4, four same-colored legs)
    ColoredGraph bubble2;
    bubble2.trivalent_count = 4;
    bubble2.legs = {LegLabel("x"), LegLabel("x"), LegLabel("x"), LegLabel("x")};
    bubble2.mate = {12, 3, 4, 1, 2, 13, 14, 9, 10, 7, 8, 15, 0, 5, 6, 11};
    bubble2.validate();
    DiagramVector v = expand(bubble2);
    DiagramVector good = apply_m2(apply_m2(v, "x", +1), "x", -1);
    CHECK(good == v);
    DiagramVector bad = corrupt_m2(apply_m2(v, "x", +1), "x", -1);
    CHECK(!(bad == v));
}

TEST_CASE("m3 vector maps") {
    ManifoldModel m = closed_rational_model(1, {});
    Move ins = Move::m3_insert("c0");
    ManifoldModel t = apply_move_to_model(m, ins);

    SUBCASE("no c0 legs: unchanged in both directions") {
        DiagramVector v = expand(h_graph("x1", "x1", "x1", "x1"));
        CHECK(apply_move(v, ins, m, t, false) == v);
        CHECK(apply_move(v, ins, m, t, true) == v);
    }
    SUBCASE("single c0 leg with zero pairing vector dies") {
        DiagramVector v = expand(y_graph("c0", "x1", "x1"));
        CHECK(apply_move(v, ins, m, t, true).is_zero());
    }
    SUBCASE("elimination uses the pairing weights") {
        Move ins2 = Move::m3_insert("c0", {Int(1)});
        ManifoldModel t2 = apply_move_to_model(m, ins2);
        ColoredGraph y = y_graph("c0", "x1", "x1");
        DiagramVector v = expand(y);
        DiagramVector img = apply_move(v, ins2, m, t2, true);
        DiagramVector want;
        want -= expand(glue_legs(y, 0, 1));
        want -= expand(glue_legs(y, 0, 2));
        CHECK(img == want);
    }
}

TEST_CASE("move verification reports: m2 and m1 on a 2-component model") {
    ManifoldModel m = closed_rational_model(2, {});
    EnumerationOptions opts;
    for (int d = 0; d <= 2; ++d) {
        MoveReport r2 = verify_isomorphism(Move::m2("x1", +1), d, m, opts);
        CHECK(r2.ok());
        MoveReport r1 = verify_isomorphism(Move::m1("x1", "x2", +1), d, m, opts);
        CHECK(r1.ok());
        MoveReport r3 = verify_isomorphism(Move::m3_insert("c0"), d, m, opts);
        CHECK(r3.ok());
    }
}

TEST_CASE("m3 round trip on a torsion model") {
    ManifoldModel m = closed_rational_model(0, {3});
    MoveReport r = verify_isomorphism(Move::m3_insert("c0"), 2, m);
    CHECK(r.ok());
}

TEST_CASE("induced matrices: identity-like move and m2 inverse product") {
    ManifoldModel m = closed_rational_model(2, {});
    int degree = 2;
    Move mv = Move::m2("x1", +1);
    ManifoldModel t = apply_move_to_model(m, mv);
    IntegerMatrix f = induced_matrix(mv, degree, m, t);
    Move inv = Move::m2("x1", -1); // the inverse move as its own forward map
    IntegerMatrix binv = induced_matrix(inv, degree, t, m);
    IntegerMatrix prod = matrix_multiply(binv, f);
    CHECK(prod.rows() == prod.cols());
    for (int i = 0; i < prod.rows(); ++i)
        for (int j = 0; j < prod.cols(); ++j)
            CHECK(prod.get(i, j) == (i == j ? 1 : 0));
}

TEST_CASE("m1 induced matrix is invertible over Z at degree 2") {
    ManifoldModel m = closed_rational_model(2, {});
    Move mv = Move::m1("x1", "x2", +1);
    ManifoldModel t = apply_move_to_model(m, mv);
    IntegerMatrix f = induced_matrix(mv, 2, m, t);
    REQUIRE(f.rows() == f.cols());
    SmithResult s = smith_normal_form(f);
    CHECK(static_cast<int>(s.diagonal.size()) == f.rows());
    for (const auto& d : s.diagonal) CHECK(d == 1);
}

TEST_CASE("m3 elimination is order independent modulo the target relations") {
    // two c0 legs: eliminating left-first vs right-first agrees in the quotient
    ManifoldModel m = closed_rational_model(1, {});
    Move ins = Move::m3_insert("c0", {Int(1)});
    ManifoldModel t = apply_move_to_model(m, ins);
    ColoredGraph h = h_graph("c0", "x1", "c0", "x1");
    DiagramVector v = expand(h);
    DiagramVector left = apply_move(v, ins, m, t, true);
    // manual right-first elimination
    std::vector<Int> pv{Int(1), Int(0)}; // pairing over (x1, c0)
    DiagramVector right;
    {
        // eliminate leg 2 first, then whatever c0 legs remain
        DiagramVector stage;
        for (int l : {0, 1, 3}) {
            const std::string color = h.legs[static_cast<std::size_t>(l)].sole_color();
            Int w = color == "c0" ? Int(0) : Int(1);
            if (w != 0) stage -= w * expand(glue_legs(h, 2, l));
        }
        right = eliminate_color(stage, "c0", pv, t);
    }
    RelationBundle bundle = build_relations(m, 2, RelationSelection::for_ao());
    GradedQuotient q = present_quotient(bundle.basis, bundle.relations, Ring::Z);
    CHECK(reduce_to_normal_form(left - right, q).is_zero());
}

TEST_CASE("move parsing") {
    ManifoldModel m = closed_rational_model(2, {});
    Move mv = Move::parse("m1:x1:x2:-1", m);
    CHECK(mv.kind == Move::Kind::M1);
    CHECK(mv.sign == -1);
    CHECK(Move::parse("m2:x1:+1", m).kind == Move::Kind::M2);
    Move m3 = Move::parse("m3:insert:c0:x1=1,x2=2", m);
    CHECK(m3.pairing == std::vector<Int>{Int(1), Int(2)});
    CHECK_THROWS_AS(Move::parse("m4:x", m), InputError);
    CHECK_THROWS_AS(Move::parse("m2:x1:2", m), InputError);
}

#include "clover/graph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

#include "clover/errors.hpp"

namespace clover {

void LegLabel::add(const std::string& color, const Int& coeff) {
    if (coeff == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), color,
                               [](const auto& t, const std::string& c) { return t.first < c; });
    if (it != terms_.end() && it->first == color) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {color, coeff});
    }
}

const std::string& LegLabel::sole_color() const {
    if (terms_.size() != 1)
        throw InputError("leg label is not a single color: " + to_string());
    return terms_[0].first;
}

std::string LegLabel::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [name, c] : terms_) {
        if (first) {
            if (c == -1) out << '-';
            else if (c != 1) out << c;
        } else {
            out << (c < 0 ? '-' : '+');
            Int a = abs_int(c);
            if (a != 1) out << a;
        }
        out << name;
        first = false;
    }
    return out.str();
}

void ColoredGraph::validate() const {
    int total = half_edge_count();
    if (static_cast<int>(mate.size()) != total)
        throw InputError("graph: mate array size mismatch");
    for (int h = 0; h < total; ++h) {
        int m = mate[h];
        if (m < 0 || m >= total || m == h)
            throw InputError("graph: invalid matching at half-edge " + std::to_string(h));
        if (mate[m] != h)
            throw InputError("graph: matching is not an involution");
        if (is_leg_half_edge(h) && is_leg_half_edge(m))
            throw InputError("graph: strut (leg-to-leg edge) is not allowed");
    }
    for (const auto& l : legs)
        if (l.empty()) throw InputError("graph: empty leg label");
    // legs == trivalent_count (mod 2) is forced: 3n + k must be even.
    if ((slot_count() + static_cast<int>(legs.size())) % 2 != 0)
        throw InputError("graph: odd number of half-edges cannot be matched");
}

bool ColoredGraph::has_loop_edge() const {
    for (int h = 0; h < slot_count(); ++h)
        if (mate[h] < slot_count() && mate[h] / 3 == h / 3) return true;
    return false;
}

bool ColoredGraph::has_internal_edge() const {
    for (int h = 0; h < slot_count(); ++h)
        if (mate[h] < slot_count()) return true;
    return false;
}

int ColoredGraph::component_count() const {
    int n = trivalent_count;
    if (n == 0) return 0;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int h = 0; h < slot_count(); ++h) {
        int m = mate[h];
        if (m < slot_count()) {
            int a = find(h / 3), b = find(m / 3);
            if (a != b) parent[a] = b;
        }
    }
    int cnt = 0;
    for (int v = 0; v < n; ++v)
        if (find(v) == v) ++cnt;
    return cnt;
}

bool ColoredGraph::all_single_colored() const {
    for (const auto& l : legs)
        if (!l.is_single()) return false;
    return true;
}

std::vector<int> ColoredGraph::legs_with_color(const std::string& color) const {
    std::vector<int> out;
    for (int j = 0; j < static_cast<int>(legs.size()); ++j)
        if (legs[j].terms().size() == 1 && legs[j].terms()[0].first == color &&
            legs[j].terms()[0].second == 1)
            out.push_back(j);
    return out;
}

ColoredGraph glue_leg_pairs(const ColoredGraph& g,
                            const std::vector<std::pair<int, int>>& pairs) {
    int k = static_cast<int>(g.legs.size());
    std::vector<int> partner_of(k, -1);
    for (auto [i, j] : pairs) {
        if (i == j) throw InputError("glue_legs: a leg cannot be glued to itself");
        if (i < 0 || j < 0 || i >= k || j >= k)
            throw InputError("glue_legs: leg index out of range");
        if (partner_of[i] != -1 || partner_of[j] != -1)
            throw InputError("glue_legs: leg pairs are not disjoint");
        partner_of[i] = j;
        partner_of[j] = i;
    }
    ColoredGraph out;
    out.trivalent_count = g.trivalent_count;
    int ns = g.slot_count();
    std::vector<int> new_leg_id(k, -1);
    for (int j = 0; j < k; ++j) {
        if (partner_of[j] == -1) {
            new_leg_id[j] = static_cast<int>(out.legs.size());
            out.legs.push_back(g.legs[j]);
        }
    }
    auto map_half = [&](int h) {
        if (h < ns) return h;
        return ns + new_leg_id[h - ns];
    };
    out.mate.assign(ns + out.legs.size(), -1);
    for (int h = 0; h < g.half_edge_count(); ++h) {
        int m = g.mate[h];
        if (h >= ns && partner_of[h - ns] != -1) continue; // handled below
        if (m >= ns && partner_of[m - ns] != -1) continue;
        out.mate[map_half(h)] = map_half(m);
    }
    // each glued pair joins its two attachment slots
    for (auto [i, j] : pairs) {
        int a = g.mate[g.leg_half_edge(i)];
        int b = g.mate[g.leg_half_edge(j)];
        out.mate[a] = b;
        out.mate[b] = a;
    }
    out.validate();
    return out;
}

ColoredGraph glue_legs(const ColoredGraph& g, int i, int j) {
    return glue_leg_pairs(g, {{i, j}});
}

ColoredGraph recolor_leg(const ColoredGraph& g, int i, const LegLabel& label) {
    if (i < 0 || i >= static_cast<int>(g.legs.size()))
        throw InputError("recolor_leg: leg index out of range");
    if (label.empty()) throw InputError("recolor_leg: empty label");
    ColoredGraph out = g;
    out.legs[i] = label;
    return out;
}

// ---------------------------------------------------------------------------
// Notation

namespace {

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' ||
           c == '#' || c == '~' || c == '\'';
}
bool is_name_start(char c) {
    return (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '*' ||
            c == '#' || c == '~');
}

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw InputError("graph notation: expected '" + std::string(1, c) +
                             "' at position " + std::to_string(pos) + " in: " + s);
    }
    void expect_word(const std::string& w) {
        skip_ws();
        if (s.compare(pos, w.size(), w) != 0)
            throw InputError("graph notation: expected '" + w + "' at position " +
                             std::to_string(pos) + " in: " + s);
        pos += w.size();
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    Int integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits)
            throw InputError("graph notation: expected integer at position " +
                             std::to_string(start) + " in: " + s);
        return Int(s.substr(start, pos - start));
    }
    std::string name() {
        skip_ws();
        if (pos >= s.size() || !is_name_start(s[pos]))
            throw InputError("graph notation: expected name at position " +
                             std::to_string(pos) + " in: " + s);
        std::size_t start = pos;
        while (pos < s.size() && is_name_char(s[pos])) ++pos;
        return s.substr(start, pos - start);
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
};

LegLabel parse_label(Cursor& c) {
    LegLabel out;
    bool first = true;
    for (;;) {
        c.skip_ws();
        int sign = 1;
        if (c.peek('-')) {
            c.eat('-');
            sign = -1;
        } else if (c.peek('+')) {
            c.eat('+');
        } else if (!first) {
            break;
        }
        c.skip_ws();
        Int coeff = 1;
        if (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
            coeff = c.integer();
        out.add(c.name(), coeff * sign);
        first = false;
    }
    if (out.empty()) throw InputError("graph notation: leg label vanished: " + c.s);
    return out;
}

// endpoint: vK.S or lJ; returns half-edge id given n and leg count
int parse_endpoint(Cursor& c, int n, int legs) {
    c.skip_ws();
    if (c.eat('v')) {
        Int vi = c.integer();
        c.expect('.');
        Int si = c.integer();
        if (vi < 0 || vi >= n || si < 0 || si > 2)
            throw InputError("graph notation: endpoint out of range in: " + c.s);
        return static_cast<int>(vi) * 3 + static_cast<int>(si);
    }
    if (c.eat('l')) {
        Int li = c.integer();
        if (li < 0 || li >= legs)
            throw InputError("graph notation: leg endpoint out of range in: " + c.s);
        return 3 * n + static_cast<int>(li);
    }
    throw InputError("graph notation: expected endpoint at position " +
                     std::to_string(c.pos) + " in: " + c.s);
}

std::string endpoint_name(const ColoredGraph& g, int h) {
    if (h < g.slot_count())
        return "v" + std::to_string(h / 3) + "." + std::to_string(h % 3);
    return "l" + std::to_string(h - g.slot_count());
}

} // namespace

ColoredGraph parse_graph(const std::string& text) {
    Cursor c{text};
    c.expect_word("deg");
    c.expect('=');
    Int deg = c.integer();
    if (deg < 0 || deg > 1000) throw InputError("graph notation: bad degree");
    c.expect(';');
    c.expect_word("legs");
    c.expect('=');
    c.expect('[');
    ColoredGraph g;
    g.trivalent_count = static_cast<int>(deg);
    if (!c.peek(']')) {
        do {
            g.legs.push_back(parse_label(c));
        } while (c.eat(','));
    }
    c.expect(']');
    c.expect(';');
    c.expect_word("edges");
    c.expect('=');
    c.expect('[');
    g.mate.assign(g.half_edge_count(), -1);
    if (!c.peek(']')) {
        do {
            int a = parse_endpoint(c, g.trivalent_count, static_cast<int>(g.legs.size()));
            c.expect('-');
            int b = parse_endpoint(c, g.trivalent_count, static_cast<int>(g.legs.size()));
            if (a == b) throw InputError("graph notation: half-edge matched to itself");
            if (g.mate[a] != -1 || g.mate[b] != -1)
                throw InputError("graph notation: half-edge used twice");
            g.mate[a] = b;
            g.mate[b] = a;
        } while (c.eat(','));
    }
    c.expect(']');
    if (!c.done())
        throw InputError("graph notation: trailing input in: " + text);
    g.validate();
    return g;
}

std::string emit_graph(const ColoredGraph& g) {
    std::ostringstream out;
    out << "deg=" << g.trivalent_count << "; legs=[";
    for (std::size_t j = 0; j < g.legs.size(); ++j) {
        if (j) out << ',';
        out << g.legs[j].to_string();
    }
    out << "]; edges=[";
    bool first = true;
    for (int h = 0; h < g.half_edge_count(); ++h) {
        int m = g.mate[h];
        if (m < h) continue;
        if (!first) out << ", ";
        out << endpoint_name(g, h) << '-' << endpoint_name(g, m);
        first = false;
    }
    out << ']';
    return out.str();
}

LegLabel parse_leg_label(const std::string& text) {
    Cursor c{text};
    LegLabel l = parse_label(c);
    if (!c.done()) throw InputError("leg label: trailing input in: " + text);
    return l;
}

} // namespace clover

#include "clover/diagram.hpp"

#include <sstream>

#include "clover/errors.hpp"

namespace clover {

void DiagramVector::add_term(const CanonicalGraph& g, int graph_degree, const Int& coeff) {
    if (coeff == 0) return;
    if (degree_ == -1) degree_ = graph_degree;
    else if (degree_ != graph_degree)
        throw InputError("DiagramVector: mixing degrees " + std::to_string(degree_) +
                         " and " + std::to_string(graph_degree));
    auto it = terms_.find(g.key);
    if (it == terms_.end()) {
        Term t{coeff, g.degenerate};
        if (g.degenerate) {
            t.coeff = ((coeff % 2) + 2) % 2;
            if (t.coeff == 0) return;
        }
        terms_.emplace(g.key, std::move(t));
    } else {
        it->second.coeff += coeff;
        if (it->second.degenerate) it->second.coeff = ((it->second.coeff % 2) + 2) % 2;
        if (it->second.coeff == 0) terms_.erase(it);
    }
    if (terms_.empty()) degree_ = -1;
}

void DiagramVector::add_graph(const ColoredGraph& g, const Int& coeff) {
    CanonResult c = canonicalize(g);
    add_term(c.graph, g.trivalent_count, coeff * c.sign);
}

DiagramVector& DiagramVector::operator+=(const DiagramVector& o) {
    for (const auto& [key, t] : o.terms_)
        add_term(CanonicalGraph{key, t.degenerate}, o.degree_, t.coeff);
    return *this;
}

DiagramVector& DiagramVector::operator-=(const DiagramVector& o) {
    for (const auto& [key, t] : o.terms_)
        add_term(CanonicalGraph{key, t.degenerate}, o.degree_, -t.coeff);
    return *this;
}

DiagramVector& DiagramVector::operator*=(const Int& c) {
    if (c == 0) {
        terms_.clear();
        degree_ = -1;
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second.coeff *= c;
        if (it->second.degenerate)
            it->second.coeff = ((it->second.coeff % 2) + 2) % 2;
        if (it->second.coeff == 0) it = terms_.erase(it);
        else ++it;
    }
    if (terms_.empty()) degree_ = -1;
    return *this;
}

DiagramVector DiagramVector::operator-() const {
    DiagramVector out = *this;
    out *= -1;
    return out;
}

bool DiagramVector::operator==(const DiagramVector& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    for (; a != terms_.end(); ++a, ++b)
        if (a->first != b->first || a->second.coeff != b->second.coeff) return false;
    return true;
}

void DiagramVector::normalize_sign() {
    if (terms_.empty()) return;
    if (terms_.begin()->second.coeff < 0) *this *= -1;
}

std::string DiagramVector::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, t] : terms_) {
        if (!first) out << ' ';
        out << (t.coeff < 0 ? "-" : "+") << abs_int(t.coeff) << "*(" << key << ")";
        first = false;
    }
    return out.str();
}

DiagramVector expand(const ColoredGraph& g, const Int& coeff) {
    g.validate();
    DiagramVector out;
    int k = static_cast<int>(g.legs.size());
    ColoredGraph resolved = g;
    // iterate the product of leg-label choices
    std::vector<std::size_t> choice(static_cast<std::size_t>(k), 0);
    for (;;) {
        Int c = coeff;
        for (int j = 0; j < k; ++j) {
            const auto& [name, a] = g.legs[static_cast<std::size_t>(j)]
                                        .terms()[choice[static_cast<std::size_t>(j)]];
            resolved.legs[static_cast<std::size_t>(j)] = LegLabel(name);
            c *= a;
        }
        out.add_graph(resolved, c);
        int j = 0;
        for (; j < k; ++j) {
            auto& ch = choice[static_cast<std::size_t>(j)];
            if (++ch < g.legs[static_cast<std::size_t>(j)].terms().size()) break;
            ch = 0;
        }
        if (j == k) break;
    }
    return out;
}

} // namespace clover

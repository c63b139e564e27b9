#pragma once

#include <random>
#include <string>
#include <vector>

#include "clover/graph.hpp"

namespace clover_test {

using clover::ColoredGraph;
using clover::LegLabel;

// theta: two vertices joined by three parallel edges (slot i to slot i)
inline ColoredGraph theta() {
    ColoredGraph g;
    g.trivalent_count = 2;
    g.mate = {3, 4, 5, 0, 1, 2};
    return g;
}

// theta with the cyclic order at the second vertex reversed (one AS flip)
inline ColoredGraph theta_flipped() {
    ColoredGraph g;
    g.trivalent_count = 2;
    g.mate = {4, 3, 5, 1, 0, 2};
    return g;
}

// two vertices with one self-loop each, joined by an edge
inline ColoredGraph dumbbell() {
    ColoredGraph g;
    g.trivalent_count = 2;
    g.mate = {1, 0, 5, 4, 3, 2};
    return g;
}

// one trivalent vertex with a self-loop and one colored leg
inline ColoredGraph tadpole(const std::string& color) {
    ColoredGraph g;
    g.trivalent_count = 1;
    g.legs = {LegLabel(color)};
    g.mate = {1, 0, 3, 2};
    return g;
}

// one vertex, three legs
inline ColoredGraph y_graph(const std::string& c0, const std::string& c1,
                            const std::string& c2) {
    ColoredGraph g;
    g.trivalent_count = 1;
    g.legs = {LegLabel(c0), LegLabel(c1), LegLabel(c2)};
    g.mate = {3, 4, 5, 0, 1, 2};
    return g;
}

// two vertices, one internal edge, legs (c0,c1) on the first vertex and
// (c2,c3) on the second
inline ColoredGraph h_graph(const std::string& c0, const std::string& c1,
                            const std::string& c2, const std::string& c3) {
    ColoredGraph g;
    g.trivalent_count = 2;
    g.legs = {LegLabel(c0), LegLabel(c1), LegLabel(c2), LegLabel(c3)};
    g.mate = {3, 6, 7, 0, 8, 9, 1, 2, 4, 5};
    return g;
}

inline ColoredGraph random_graph(std::mt19937& rng, int max_degree,
                                 const std::vector<std::string>& colors) {
    for (;;) {
        int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_degree));
        int nslots = 3 * n;
        int kmax = colors.empty() ? 0 : nslots;
        std::vector<int> legal_k;
        for (int k = nslots % 2; k <= kmax; k += 2) legal_k.push_back(k);
        if (legal_k.empty()) continue;
        int k = legal_k[rng() % legal_k.size()];
        ColoredGraph g;
        g.trivalent_count = n;
        std::vector<int> slots(static_cast<std::size_t>(nslots));
        for (int s = 0; s < nslots; ++s) slots[static_cast<std::size_t>(s)] = s;
        std::shuffle(slots.begin(), slots.end(), rng);
        g.mate.assign(static_cast<std::size_t>(nslots + k), -1);
        for (int j = 0; j < k; ++j) {
            g.legs.push_back(LegLabel(colors[rng() % colors.size()]));
            g.mate[static_cast<std::size_t>(slots[static_cast<std::size_t>(j)])] = nslots + j;
            g.mate[static_cast<std::size_t>(nslots + j)] = slots[static_cast<std::size_t>(j)];
        }
        std::vector<int> rest(slots.begin() + k, slots.end());
        std::shuffle(rest.begin(), rest.end(), rng);
        for (std::size_t i = 0; i + 1 < rest.size(); i += 2) {
            g.mate[static_cast<std::size_t>(rest[i])] = rest[i + 1];
            g.mate[static_cast<std::size_t>(rest[i + 1])] = rest[i];
        }
        g.validate();
        return g;
    }
}

struct Relabeled {
    ColoredGraph graph;
    int sign = 1; // product of cyclic-order reversal signs
};

// random vertex permutation, slot permutation per vertex, leg permutation
inline Relabeled random_relabel(const ColoredGraph& g, std::mt19937& rng) {
    static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                    {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
    static const int psign[6] = {1, 1, 1, -1, -1, -1};
    int n = g.trivalent_count;
    int k = static_cast<int>(g.legs.size());
    std::vector<int> vmap(static_cast<std::size_t>(n)); // old vertex -> new vertex
    for (int v = 0; v < n; ++v) vmap[static_cast<std::size_t>(v)] = v;
    std::shuffle(vmap.begin(), vmap.end(), rng);
    std::vector<int> lmap(static_cast<std::size_t>(k)); // old leg -> new leg
    for (int j = 0; j < k; ++j) lmap[static_cast<std::size_t>(j)] = j;
    std::shuffle(lmap.begin(), lmap.end(), rng);
    Relabeled out;
    out.graph.trivalent_count = n;
    out.graph.legs.resize(static_cast<std::size_t>(k));
    std::vector<int> half_map(static_cast<std::size_t>(g.half_edge_count()));
    std::vector<int> sigma(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        int s = static_cast<int>(rng() % 6);
        sigma[static_cast<std::size_t>(v)] = s;
        out.sign *= psign[s];
        // old slot (v, i) -> new slot (vmap[v], inv_perm(i))
        for (int i = 0; i < 3; ++i)
            half_map[static_cast<std::size_t>(3 * v + perms[s][i])] =
                3 * vmap[static_cast<std::size_t>(v)] + i;
    }
    for (int j = 0; j < k; ++j) {
        half_map[static_cast<std::size_t>(3 * n + j)] = 3 * n + lmap[static_cast<std::size_t>(j)];
        out.graph.legs[static_cast<std::size_t>(lmap[static_cast<std::size_t>(j)])] =
            g.legs[static_cast<std::size_t>(j)];
    }
    out.graph.mate.assign(static_cast<std::size_t>(g.half_edge_count()), -1);
    for (int h = 0; h < g.half_edge_count(); ++h)
        out.graph.mate[static_cast<std::size_t>(half_map[static_cast<std::size_t>(h)])] =
            half_map[static_cast<std::size_t>(g.mate[static_cast<std::size_t>(h)])];
    out.graph.validate();
    return out;
}

} // namespace clover_test

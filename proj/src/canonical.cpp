#include "clover/canonical.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <map>
#include <tuple>
#include <vector>

#include "clover/errors.hpp"

namespace clover {

// Canonical form search. The encoding of a labeled graph lists, for new slot
// q = 3p+s in increasing order, a code pair:
//   (0, r)    edge to an already-labeled slot with new id r
//   (1, c)    leg of color rank c
//   (2, 0)    edge to a not-yet-labeled vertex (recorded again, as (0,.),
//             from the other side once that vertex is labeled)
// The canonical representative minimizes the flattened code sequence over all
// vertex orders compatible with the refinement partition and all slot
// permutations per vertex. Odd slot permutations reverse the cyclic order and
// contribute a factor -1; the sign of the minimizing configuration is the
// returned sign, and seeing both signs among minimizing configurations marks
// the class degenerate.

namespace {

constexpr int kMaxV = 24;

const int kPerm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                         {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
const int kPermSign[6] = {+1, +1, +1, -1, -1, -1};

struct Search {
    int n = 0;
    int nslots = 0;
    const int* mate = nullptr;
    std::vector<int> legrank; // leg index -> color rank
    int poscol[kMaxV];
    int vcol[kMaxV];

    int new_idx[kMaxV];
    int invsig[kMaxV][3];
    int order_v[kMaxV];
    int perm_of[kMaxV];
    int cur[6 * kMaxV];
    int best[6 * kMaxV];
    int best_order[kMaxV];
    int best_perm[kMaxV];
    bool improved = false;
    bool seen_plus = false, seen_minus = false;

    void write_block(int p, int u, int sigma) {
        new_idx[u] = p;
        for (int s = 0; s < 3; ++s) invsig[u][kPerm[sigma][s]] = s;
        int* blk = cur + 6 * p;
        for (int s = 0; s < 3; ++s) {
            int orig = 3 * u + kPerm[sigma][s];
            int m = mate[orig];
            if (m >= nslots) {
                blk[2 * s] = 1;
                blk[2 * s + 1] = legrank[m - nslots];
            } else {
                int w = m / 3;
                if (new_idx[w] >= 0) {
                    blk[2 * s] = 0;
                    blk[2 * s + 1] = 3 * new_idx[w] + invsig[w][m % 3];
                } else {
                    blk[2 * s] = 2;
                    blk[2 * s + 1] = 0;
                }
            }
        }
    }

    // -1 / 0 / +1 comparison of the current block against best
    int cmp_block(int p) const {
        const int* a = cur + 6 * p;
        const int* b = best + 6 * p;
        for (int i = 0; i < 6; ++i) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }

    void greedy_complete(int p) {
        for (int q = p; q < n; ++q) {
            for (int v = 0; v < n; ++v) {
                if (vcol[v] == poscol[q] && new_idx[v] < 0) {
                    write_block(q, v, 0);
                    order_v[q] = v;
                    perm_of[q] = 0;
                    break;
                }
            }
        }
        std::memcpy(best, cur, sizeof(int) * 6 * static_cast<std::size_t>(n));
        std::memcpy(best_order, order_v, sizeof(int) * static_cast<std::size_t>(n));
        std::memcpy(best_perm, perm_of, sizeof(int) * static_cast<std::size_t>(n));
        for (int q = p; q < n; ++q) new_idx[order_v[q]] = -1;
    }

    // returns true when the pass was aborted by an improvement
    bool dfs(int p, int sign) {
        if (p == n) {
            if (sign > 0) seen_plus = true;
            else seen_minus = true;
            return false;
        }
        for (int v = 0; v < n; ++v) {
            if (vcol[v] != poscol[p] || new_idx[v] >= 0) continue;
            for (int sigma = 0; sigma < 6; ++sigma) {
                write_block(p, v, sigma);
                int c = cmp_block(p);
                if (c > 0) {
                    new_idx[v] = -1;
                    continue;
                }
                if (c < 0) {
                    // strictly smaller prefix: complete arbitrarily, adopt as
                    // the new best and restart the pass
                    order_v[p] = v;
                    perm_of[p] = sigma;
                    std::memcpy(best, cur, sizeof(int) * 6 * static_cast<std::size_t>(p + 1));
                    std::memcpy(best_order, order_v, sizeof(int) * static_cast<std::size_t>(p + 1));
                    std::memcpy(best_perm, perm_of, sizeof(int) * static_cast<std::size_t>(p + 1));
                    greedy_complete(p + 1);
                    // greedy_complete rewrote best wholesale; re-copy prefix
                    std::memcpy(best, cur, sizeof(int) * 6 * static_cast<std::size_t>(p + 1));
                    new_idx[v] = -1;
                    improved = true;
                    return true;
                }
                order_v[p] = v;
                perm_of[p] = sigma;
                bool aborted = dfs(p + 1, sign * kPermSign[sigma]);
                new_idx[v] = -1;
                if (aborted) return true;
            }
        }
        return false;
    }
};

} // namespace

CanonResult canonicalize(const ColoredGraph& g) {
    g.validate();
    if (!g.all_single_colored())
        throw InputError("canonicalize: legs must be single-colored; expand first");
    int n = g.trivalent_count;
    if (n > kMaxV)
        throw ResourceLimitError("canonicalize: degree " + std::to_string(n) +
                                 " exceeds the supported bound " + std::to_string(kMaxV));
    if (n == 0) {
        ColoredGraph empty;
        return {{emit_graph(empty), false}, 1};
    }
    int k = static_cast<int>(g.legs.size());
    int nslots = 3 * n;

    // color ranks: legs ordered by name (graph-local, order-isomorphic to names)
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(k));
    for (const auto& l : g.legs) names.push_back(l.sole_color());
    std::vector<std::string> sorted_names = names;
    std::sort(sorted_names.begin(), sorted_names.end());
    sorted_names.erase(std::unique(sorted_names.begin(), sorted_names.end()),
                       sorted_names.end());
    Search srch;
    srch.n = n;
    srch.nslots = nslots;
    srch.mate = g.mate.data();
    srch.legrank.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j)
        srch.legrank[static_cast<std::size_t>(j)] = static_cast<int>(
            std::lower_bound(sorted_names.begin(), sorted_names.end(), names[static_cast<std::size_t>(j)]) -
            sorted_names.begin());

    // iterative partition refinement on vertices
    std::vector<int> vcol(static_cast<std::size_t>(n), 0);
    for (int round = 0; round < n + 2; ++round) {
        using Sig = std::tuple<int, std::array<std::pair<int, int>, 3>>;
        std::vector<std::pair<Sig, int>> sigs;
        sigs.reserve(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            std::array<std::pair<int, int>, 3> sc;
            for (int s = 0; s < 3; ++s) {
                int m = g.mate[3 * v + s];
                if (m >= nslots)
                    sc[static_cast<std::size_t>(s)] = {1, srch.legrank[static_cast<std::size_t>(m - nslots)]};
                else if (m / 3 == v)
                    sc[static_cast<std::size_t>(s)] = {2, 0};
                else
                    sc[static_cast<std::size_t>(s)] = {0, vcol[static_cast<std::size_t>(m / 3)]};
            }
            std::sort(sc.begin(), sc.end());
            sigs.push_back({{vcol[static_cast<std::size_t>(v)], sc}, v});
        }
        std::sort(sigs.begin(), sigs.end());
        std::vector<int> next(static_cast<std::size_t>(n));
        int rank = 0;
        for (std::size_t i = 0; i < sigs.size(); ++i) {
            if (i > 0 && sigs[i].first != sigs[i - 1].first) ++rank;
            next[static_cast<std::size_t>(sigs[i].second)] = rank;
        }
        if (next == vcol) break;
        vcol = next;
    }
    for (int v = 0; v < n; ++v) srch.vcol[v] = vcol[static_cast<std::size_t>(v)];
    std::vector<int> sorted_cols = vcol;
    std::sort(sorted_cols.begin(), sorted_cols.end());
    for (int p = 0; p < n; ++p) srch.poscol[p] = sorted_cols[static_cast<std::size_t>(p)];

    std::fill(srch.new_idx, srch.new_idx + n, -1);
    srch.greedy_complete(0);
    for (;;) {
        srch.improved = false;
        srch.seen_plus = srch.seen_minus = false;
        srch.dfs(0, 1);
        if (!srch.improved) break;
    }

    bool degenerate = srch.seen_plus && srch.seen_minus;
    int sign = degenerate ? 1 : (srch.seen_plus ? 1 : -1);

    // build the canonical representative from the winning configuration
    ColoredGraph rep;
    rep.trivalent_count = n;
    std::vector<int> new_idx(static_cast<std::size_t>(n));
    std::vector<std::array<int, 3>> inv(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
        int u = srch.best_order[p];
        new_idx[static_cast<std::size_t>(u)] = p;
        for (int s = 0; s < 3; ++s)
            inv[static_cast<std::size_t>(u)][static_cast<std::size_t>(kPerm[srch.best_perm[p]][s])] = s;
    }
    auto new_slot = [&](int h) {
        int v = h / 3;
        return 3 * new_idx[static_cast<std::size_t>(v)] +
               inv[static_cast<std::size_t>(v)][static_cast<std::size_t>(h % 3)];
    };
    // legs sorted by new attachment slot
    std::vector<std::pair<int, int>> leg_order; // (new attachment slot, old leg)
    leg_order.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j)
        leg_order.push_back({new_slot(g.mate[g.leg_half_edge(j)]), j});
    std::sort(leg_order.begin(), leg_order.end());
    std::vector<int> new_leg_pos(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        new_leg_pos[static_cast<std::size_t>(leg_order[static_cast<std::size_t>(j)].second)] = j;
        rep.legs.push_back(g.legs[static_cast<std::size_t>(leg_order[static_cast<std::size_t>(j)].second)]);
    }
    auto map_half = [&](int h) {
        if (h < nslots) return new_slot(h);
        return nslots + new_leg_pos[static_cast<std::size_t>(h - nslots)];
    };
    rep.mate.assign(static_cast<std::size_t>(nslots + k), -1);
    for (int h = 0; h < g.half_edge_count(); ++h)
        rep.mate[static_cast<std::size_t>(map_half(h))] = map_half(g.mate[static_cast<std::size_t>(h)]);

    return {{emit_graph(rep), degenerate}, sign};
}

ColoredGraph decode_key(const std::string& key) { return parse_graph(key); }

} // namespace clover

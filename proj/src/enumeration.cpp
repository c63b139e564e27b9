#include "clover/enumeration.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "clover/errors.hpp"
#include "clover/parallel.hpp"

namespace clover {

namespace {

// one unit of work: fixed leg count and fixed set of leg-attachment slots
struct Task {
    int k;
    std::vector<int> slots; // ascending
};

void subsets_rec(int nslots, int k, int start, std::vector<int>& cur,
                 std::vector<Task>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back({k, cur});
        return;
    }
    for (int s = start; s <= nslots - (k - static_cast<int>(cur.size())); ++s) {
        cur.push_back(s);
        subsets_rec(nslots, k, s + 1, cur, out);
        cur.pop_back();
    }
}

class Collector {
public:
    void merge(const std::vector<std::pair<std::string, bool>>& batch) {
        std::lock_guard<std::mutex> lk(mutex_);
        for (const auto& [key, degen] : batch) classes_.emplace(key, degen);
    }
    void fill(GeneratorBasis& basis) {
        std::vector<std::pair<std::string, bool>> all(classes_.begin(), classes_.end());
        std::sort(all.begin(), all.end());
        for (auto& [key, degen] : all) {
            if (degen) basis.degenerates.push_back({key, true});
            else basis.generators.push_back({key, false});
        }
    }

private:
    std::mutex mutex_;
    std::unordered_map<std::string, bool> classes_;
};

struct TaskRunner {
    int n;
    const std::vector<Color>& alphabet;
    const EnumerationOptions& opts;
    Collector& collector;

    void run(const Task& task) const {
        int nslots = 3 * n;
        int k = task.k;
        ColoredGraph g;
        g.trivalent_count = n;
        g.legs.assign(static_cast<std::size_t>(k), LegLabel("?"));
        g.mate.assign(static_cast<std::size_t>(nslots + k), -1);
        std::vector<char> is_leg_slot(static_cast<std::size_t>(nslots), 0);
        for (int j = 0; j < k; ++j) {
            int s = task.slots[static_cast<std::size_t>(j)];
            is_leg_slot[static_cast<std::size_t>(s)] = 1;
            g.mate[static_cast<std::size_t>(s)] = nslots + j;
            g.mate[static_cast<std::size_t>(nslots + j)] = s;
        }
        std::vector<int> free_slots;
        for (int s = 0; s < nslots; ++s)
            if (!is_leg_slot[static_cast<std::size_t>(s)]) free_slots.push_back(s);

        std::vector<std::pair<std::string, bool>> batch;
        std::vector<int> stack;
        match_rec(g, free_slots, stack, batch);
        collector.merge(batch);
    }

    void match_rec(ColoredGraph& g, const std::vector<int>& free_slots,
                   std::vector<int>& used, std::vector<std::pair<std::string, bool>>& batch) const {
        // find first unmatched free slot
        int a = -1;
        for (int s : free_slots) {
            if (g.mate[static_cast<std::size_t>(s)] == -1) {
                a = s;
                break;
            }
        }
        if (a == -1) {
            emit_colorings(g, batch);
            return;
        }
        for (int b : free_slots) {
            if (b <= a || g.mate[static_cast<std::size_t>(b)] != -1) continue;
            g.mate[static_cast<std::size_t>(a)] = b;
            g.mate[static_cast<std::size_t>(b)] = a;
            match_rec(g, free_slots, used, batch);
            g.mate[static_cast<std::size_t>(a)] = -1;
            g.mate[static_cast<std::size_t>(b)] = -1;
        }
    }

    void emit_colorings(ColoredGraph& g,
                        std::vector<std::pair<std::string, bool>>& batch) const {
        if (opts.connected_only && !g.is_connected()) return;
        int k = static_cast<int>(g.legs.size());
        int a = static_cast<int>(alphabet.size());
        if (!opts.with_star) {
            if (k > 0 && a == 0) return;
            std::vector<int> word(static_cast<std::size_t>(k), 0);
            for (;;) {
                for (int j = 0; j < k; ++j)
                    g.legs[static_cast<std::size_t>(j)] =
                        LegLabel(alphabet[static_cast<std::size_t>(word[static_cast<std::size_t>(j)])].name);
                CanonResult c = canonicalize(g);
                batch.push_back({c.graph.key, c.graph.degenerate});
                int j = 0;
                for (; j < k; ++j) {
                    if (++word[static_cast<std::size_t>(j)] < a) break;
                    word[static_cast<std::size_t>(j)] = 0;
                }
                if (j == k) break;
            }
        } else {
            if (k == 0) return;
            if (a == 0 && k > 1) return;
            for (int star = 0; star < k; ++star) {
                std::vector<int> word(static_cast<std::size_t>(k), 0);
                for (;;) {
                    for (int j = 0; j < k; ++j) {
                        if (j == star)
                            g.legs[static_cast<std::size_t>(j)] = LegLabel(kStarColor);
                        else
                            g.legs[static_cast<std::size_t>(j)] =
                                LegLabel(alphabet[static_cast<std::size_t>(word[static_cast<std::size_t>(j)])].name);
                    }
                    CanonResult c = canonicalize(g);
                    batch.push_back({c.graph.key, c.graph.degenerate});
                    int j = 0;
                    for (; j < k; ++j) {
                        if (j == star) continue;
                        if (++word[static_cast<std::size_t>(j)] < a) break;
                        word[static_cast<std::size_t>(j)] = 0;
                    }
                    if (j == k) break;
                }
            }
        }
    }
};

} // namespace

std::vector<Color> make_alphabet(const std::vector<std::string>& names) {
    std::vector<Color> out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == kStarColor)
            throw InputError("alphabet: the color '*' is reserved");
        for (std::size_t j = 0; j < i; ++j)
            if (names[j] == names[i])
                throw InputError("alphabet: duplicate color '" + names[i] + "'");
        out.push_back({names[i], static_cast<int>(i)});
    }
    return out;
}

namespace {

// enumeration is pure in (degree, alphabet, flags); results are shared
std::mutex cache_mutex;
std::map<std::string, GeneratorBasis> basis_cache;

std::string cache_key(int degree, const std::vector<Color>& alphabet,
                      const EnumerationOptions& opts) {
    std::string key = std::to_string(degree);
    key += opts.with_star ? "*" : ".";
    key += opts.connected_only ? "c" : ".";
    for (const auto& c : alphabet) {
        key += '|';
        key += c.name;
    }
    return key;
}

} // namespace

GeneratorBasis enumerate_basis(int degree, const std::vector<Color>& alphabet,
                               const EnumerationOptions& opts) {
    if (degree < 0) throw InputError("enumerate: negative degree");
    if (degree > opts.max_degree)
        throw ResourceLimitError("enumerate: degree " + std::to_string(degree) +
                                 " exceeds the bound " + std::to_string(opts.max_degree) +
                                 " (raise it deliberately)");
    for (const auto& c : alphabet)
        if (c.name == kStarColor)
            throw InputError("enumerate: the color '*' is reserved");

    std::string memo = cache_key(degree, alphabet, opts);
    {
        std::lock_guard<std::mutex> lk(cache_mutex);
        auto it = basis_cache.find(memo);
        if (it != basis_cache.end()) return it->second;
    }

    GeneratorBasis basis;
    basis.degree = degree;
    basis.alphabet = alphabet;
    if (degree == 0) {
        if (!opts.with_star && !opts.connected_only)
            basis.generators.push_back({emit_graph(ColoredGraph{}), false});
        std::lock_guard<std::mutex> lk(cache_mutex);
        basis_cache.emplace(memo, basis);
        return basis;
    }

    int nslots = 3 * degree;
    std::vector<Task> tasks;
    for (int k = nslots % 2; k <= nslots; k += 2) {
        if (!opts.with_star && k > 0 && alphabet.empty()) continue;
        if (opts.with_star && (k == 0 || (alphabet.empty() && k > 1))) continue;
        std::vector<int> cur;
        subsets_rec(nslots, k, 0, cur, tasks);
    }

    Collector collector;
    TaskRunner runner{degree, alphabet, opts, collector};
    parallel_for(tasks.size(), [&](std::size_t i) { runner.run(tasks[i]); });
    collector.fill(basis);
    {
        std::lock_guard<std::mutex> lk(cache_mutex);
        basis_cache.emplace(memo, basis);
    }
    return basis;
}

} // namespace clover

#include "clover/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <tuple>

#include "clover/errors.hpp"

namespace clover {

// ---------------------------------------------------------------------------
// IntegerMatrix

Int IntegerMatrix::get(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Int(0) : it->second;
}

void IntegerMatrix::set(int r, int c, Int v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw InputError("IntegerMatrix: index out of range");
    if (v == 0) entries_.erase({r, c});
    else entries_[{r, c}] = std::move(v);
}

std::vector<std::vector<Int>> IntegerMatrix::to_dense() const {
    std::vector<std::vector<Int>> d(static_cast<std::size_t>(rows_),
                                    std::vector<Int>(static_cast<std::size_t>(cols_), 0));
    for (const auto& [rc, v] : entries_)
        d[static_cast<std::size_t>(rc.first)][static_cast<std::size_t>(rc.second)] = v;
    return d;
}

IntegerMatrix IntegerMatrix::from_dense(const std::vector<std::vector<Int>>& d, int cols) {
    IntegerMatrix m(static_cast<int>(d.size()), cols);
    for (std::size_t r = 0; r < d.size(); ++r) {
        if (static_cast<int>(d[r].size()) != cols)
            throw InputError("IntegerMatrix: ragged dense input");
        for (int c = 0; c < cols; ++c)
            if (d[r][static_cast<std::size_t>(c)] != 0)
                m.set(static_cast<int>(r), c, d[r][static_cast<std::size_t>(c)]);
    }
    return m;
}

std::string IntegerMatrix::to_triplets() const {
    std::ostringstream out;
    out << "# rows=" << rows_ << " cols=" << cols_ << "\n";
    for (const auto& [rc, v] : entries_)
        out << rc.first << ' ' << rc.second << ' ' << v << "\n";
    return out.str();
}

IntegerMatrix IntegerMatrix::from_triplets(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int rows = -1, cols = -1;
    std::vector<std::tuple<int, int, Int>> trips;
    int maxr = -1, maxc = -1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto rp = line.find("rows=");
            auto cp = line.find("cols=");
            if (rp != std::string::npos) rows = std::atoi(line.c_str() + rp + 5);
            if (cp != std::string::npos) cols = std::atoi(line.c_str() + cp + 5);
            continue;
        }
        std::istringstream ls(line);
        int r, c;
        std::string v;
        if (!(ls >> r >> c >> v))
            throw InputError("matrix triplets: bad line: " + line);
        trips.emplace_back(r, c, Int(v));
        maxr = std::max(maxr, r);
        maxc = std::max(maxc, c);
    }
    if (rows < 0) rows = maxr + 1;
    if (cols < 0) cols = maxc + 1;
    IntegerMatrix m(rows, cols);
    for (auto& [r, c, v] : trips) m.set(r, c, v);
    return m;
}

IntegerMatrix matrix_multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols() != b.rows()) throw InputError("matrix_multiply: shape mismatch");
    IntegerMatrix out(a.rows(), b.cols());
    std::map<std::pair<int, int>, Int> acc;
    for (const auto& [rc, v] : a.entries()) {
        for (int c = 0; c < b.cols(); ++c) {
            Int bv = b.get(rc.second, c);
            if (bv != 0) acc[{rc.first, c}] += v * bv;
        }
    }
    for (auto& [rc, v] : acc)
        if (v != 0) out.set(rc.first, rc.second, v);
    return out;
}

// ---------------------------------------------------------------------------
// Dense Smith normal form with transforms

namespace {

using Dense = std::vector<std::vector<Int>>;

void swap_rows(Dense& a, int i, int j) { std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]); }
void swap_cols(Dense& a, int i, int j) {
    for (auto& row : a) std::swap(row[static_cast<std::size_t>(i)], row[static_cast<std::size_t>(j)]);
}
// row i -= q * row j
void row_op(Dense& a, int i, int j, const Int& q) {
    if (q == 0) return;
    auto& ri = a[static_cast<std::size_t>(i)];
    auto& rj = a[static_cast<std::size_t>(j)];
    for (std::size_t c = 0; c < ri.size(); ++c) ri[c] -= q * rj[c];
}
// col i -= q * col j
void col_op(Dense& a, int i, int j, const Int& q) {
    if (q == 0) return;
    for (auto& row : a)
        row[static_cast<std::size_t>(i)] -= q * row[static_cast<std::size_t>(j)];
}
void negate_row(Dense& a, int i) {
    for (auto& v : a[static_cast<std::size_t>(i)]) v = -v;
}

// Core dense SNF; u/v may be null when transforms are not needed.
std::vector<Int> snf_dense(Dense a, Dense* u, Dense* v) {
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    if (u) {
        u->assign(static_cast<std::size_t>(rows), std::vector<Int>(static_cast<std::size_t>(rows), 0));
        for (int i = 0; i < rows; ++i) (*u)[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    }
    if (v) {
        v->assign(static_cast<std::size_t>(cols), std::vector<Int>(static_cast<std::size_t>(cols), 0));
        for (int i = 0; i < cols; ++i) (*v)[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    }
    std::vector<Int> diag;
    int t = 0;
    while (t < rows && t < cols) {
        // minimal nonzero entry in the remaining block
        int pr = -1, pc = -1;
        Int best = 0;
        for (int r = t; r < rows; ++r)
            for (int c = t; c < cols; ++c) {
                const Int& x = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                if (x == 0) continue;
                Int ax = abs_int(x);
                if (pr < 0 || ax < best) {
                    best = ax;
                    pr = r;
                    pc = c;
                }
            }
        if (pr < 0) break;
        if (pr != t) {
            swap_rows(a, pr, t);
            if (u) swap_rows(*u, pr, t);
        }
        if (pc != t) {
            swap_cols(a, pc, t);
            if (v) swap_cols(*v, pc, t);
        }
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int r = t + 1; r < rows; ++r) {
                Int q = floor_div(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)],
                                  a[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)]);
                row_op(a, r, t, q);
                if (u) row_op(*u, r, t, q);
                if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)] != 0) {
                    swap_rows(a, r, t);
                    if (u) swap_rows(*u, r, t);
                    dirty = true;
                }
            }
            for (int c = t + 1; c < cols; ++c) {
                Int q = floor_div(a[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)],
                                  a[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)]);
                col_op(a, c, t, q);
                if (v) col_op(*v, c, t, q);
                if (a[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)] != 0) {
                    swap_cols(a, c, t);
                    if (v) swap_cols(*v, c, t);
                    dirty = true;
                }
            }
        }
        // divisibility sweep: pivot must divide the remaining block
        bool fixed = true;
        for (int r = t + 1; r < rows && fixed; ++r)
            for (int c = t + 1; c < cols && fixed; ++c)
                if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] %
                        a[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] != 0) {
                    row_op(a, t, r, Int(-1)); // add row r to row t
                    if (u) row_op(*u, t, r, Int(-1));
                    fixed = false;
                }
        if (!fixed) continue; // redo the pivot at position t
        if (a[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] < 0) {
            negate_row(a, t);
            if (u) negate_row(*u, t);
        }
        diag.push_back(a[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)]);
        ++t;
    }
    return diag;
}

} // namespace

SmithResult smith_normal_form(const IntegerMatrix& a) {
    Dense d = a.to_dense();
    Dense u, v;
    std::vector<Int> diag = snf_dense(d, &u, &v);
    SmithResult out;
    out.diagonal = diag;
    out.u = IntegerMatrix::from_dense(u, a.rows());
    out.v = IntegerMatrix::from_dense(v, a.cols());
    IntegerMatrix dd(a.rows(), a.cols());
    for (std::size_t i = 0; i < diag.size(); ++i)
        dd.set(static_cast<int>(i), static_cast<int>(i), diag[i]);
    out.d = dd;
#ifndef NDEBUG
    if (a.rows() <= 64 && a.cols() <= 64) {
        if (!(matrix_multiply(matrix_multiply(out.u, a), out.v) == out.d))
            throw std::logic_error("smith_normal_form: U*A*V != D");
        Int du = determinant(u), dv = determinant(v);
        if (abs_int(du) != 1 || abs_int(dv) != 1)
            throw std::logic_error("smith_normal_form: transform not unimodular");
        for (std::size_t i = 1; i < diag.size(); ++i)
            if (diag[i] % diag[i - 1] != 0)
                throw std::logic_error("smith_normal_form: divisibility chain broken");
    }
#endif
    return out;
}

Int determinant(const std::vector<std::vector<Int>>& a) {
    int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    Dense m = a;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] != 0) {
                    p = r;
                    break;
                }
            if (p < 0) return 0;
            std::swap(m[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(p)]);
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r) {
            for (int c = k + 1; c < n; ++c) {
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
                         m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                     m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] *
                         m[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)]) /
                    prev;
            }
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] = 0;
        }
        prev = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    return sign > 0 ? m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)]
                    : Int(-m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)]);
}

// ---------------------------------------------------------------------------
// Sparse rows

namespace {

void normalize_gcd(SparseRow& r) {
    Int g = 0;
    for (const auto& [c, v] : r) g = gcd_int(g, v);
    if (g > 1)
        for (auto& [c, v] : r) v /= g;
}

// r := a*r + b*p (merge of sorted sparse rows)
SparseRow row_combine(const SparseRow& r, const Int& a, const SparseRow& p, const Int& b) {
    SparseRow out;
    out.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j >= p.size() || (i < r.size() && r[i].first < p[j].first)) {
            Int v = a * r[i].second;
            if (v != 0) out.push_back({r[i].first, std::move(v)});
            ++i;
        } else if (i >= r.size() || p[j].first < r[i].first) {
            Int v = b * p[j].second;
            if (v != 0) out.push_back({p[j].first, std::move(v)});
            ++j;
        } else {
            Int v = a * r[i].second + b * p[j].second;
            if (v != 0) out.push_back({r[i].first, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

Int row_coeff(const SparseRow& r, int col) {
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    return (it != r.end() && it->first == col) ? it->second : Int(0);
}

} // namespace

Echelon echelon_q(std::vector<SparseRow> rows, int cols) {
    Echelon e;
    e.cols = cols;
    std::vector<SparseRow> active;
    for (auto& r : rows)
        if (!r.empty()) {
            normalize_gcd(r);
            active.push_back(std::move(r));
        }
    while (!active.empty()) {
        // pivot row: prefer unit entries, then short rows
        std::size_t best = 0;
        auto score = [](const SparseRow& r) {
            bool unit = false;
            for (const auto& [c, v] : r)
                if (v == 1 || v == -1) {
                    unit = true;
                    break;
                }
            return std::make_pair(unit ? 0 : 1, r.size());
        };
        auto best_score = score(active[0]);
        for (std::size_t i = 1; i < active.size(); ++i) {
            auto s = score(active[i]);
            if (s < best_score) {
                best_score = s;
                best = i;
            }
        }
        SparseRow pivot = std::move(active[best]);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
        // pivot column: unit entry with the fewest occurrences in active rows
        std::vector<int> count(static_cast<std::size_t>(cols), 0);
        for (const auto& r : active)
            for (const auto& [c, v] : r) ++count[static_cast<std::size_t>(c)];
        int pc = -1;
        long long pc_count = 0;
        bool pc_unit = false;
        for (const auto& [c, v] : pivot) {
            bool unit = (v == 1 || v == -1);
            long long cnt = count[static_cast<std::size_t>(c)];
            if (pc < 0 || std::make_pair(!unit, cnt) < std::make_pair(!pc_unit, pc_count)) {
                pc = c;
                pc_count = cnt;
                pc_unit = unit;
            }
        }
        Int pv = row_coeff(pivot, pc);
        // eliminate pc everywhere (active rows and earlier pivot rows)
        auto eliminate = [&](SparseRow& r) {
            Int rv = row_coeff(r, pc);
            if (rv == 0) return;
            r = row_combine(r, pv, pivot, -rv);
            normalize_gcd(r);
        };
        for (auto& r : e.rows) eliminate(r);
        std::vector<SparseRow> next;
        next.reserve(active.size());
        for (auto& r : active) {
            eliminate(r);
            if (!r.empty()) next.push_back(std::move(r));
        }
        active = std::move(next);
        e.rows.push_back(std::move(pivot));
        e.pivot_cols.push_back(pc);
    }
    return e;
}

std::vector<std::pair<int, Rational>> reduce_q(const Echelon& e, const SparseRow& v) {
    std::map<int, Rational> acc;
    for (const auto& [c, x] : v) acc[c] = Rational(x);
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        int pc = e.pivot_cols[i];
        auto it = acc.find(pc);
        if (it == acc.end() || it->second == 0) continue;
        Rational factor = it->second / Rational(row_coeff(e.rows[i], pc));
        for (const auto& [c, x] : e.rows[i]) {
            acc[c] -= factor * Rational(x);
        }
    }
    std::vector<std::pair<int, Rational>> out;
    for (auto& [c, x] : acc)
        if (x != 0) out.push_back({c, x});
    return out;
}

Hermite hermite_z(std::vector<SparseRow> rows, int cols) {
    Hermite h;
    h.cols = cols;
    std::vector<SparseRow> active;
    for (auto& r : rows)
        if (!r.empty()) active.push_back(std::move(r));
    for (int c = 0; c < cols && !active.empty(); ++c) {
        // gather rows with a nonzero at column c (all leading, by construction)
        std::vector<SparseRow> bucket;
        std::vector<SparseRow> rest;
        for (auto& r : active) {
            if (!r.empty() && r.front().first == c) bucket.push_back(std::move(r));
            else rest.push_back(std::move(r));
        }
        active = std::move(rest);
        if (bucket.empty()) continue;
        // gcd loop on the leading column
        while (bucket.size() > 1) {
            std::size_t mn = 0;
            for (std::size_t i = 1; i < bucket.size(); ++i)
                if (abs_int(bucket[i].front().second) < abs_int(bucket[mn].front().second)) mn = i;
            std::swap(bucket[0], bucket[mn]);
            std::vector<SparseRow> keep;
            keep.push_back(std::move(bucket[0]));
            for (std::size_t i = 1; i < bucket.size(); ++i) {
                Int q = floor_div(bucket[i].front().second, keep[0].front().second);
                SparseRow r = row_combine(bucket[i], Int(1), keep[0], -q);
                if (r.empty()) continue;
                if (r.front().first == c) keep.push_back(std::move(r));
                else active.push_back(std::move(r));
            }
            bucket = std::move(keep);
        }
        SparseRow pivot = std::move(bucket[0]);
        if (pivot.front().second < 0)
            for (auto& [cc, v] : pivot) v = -v;
        // reduce earlier pivot rows at column c into [0, pivot)
        for (auto& pr : h.rows) {
            Int rv = row_coeff(pr, c);
            if (rv == 0) continue;
            Int q = floor_div(rv, pivot.front().second);
            if (q != 0) pr = row_combine(pr, Int(1), pivot, -q);
        }
        h.rows.push_back(std::move(pivot));
        h.pivot_cols.push_back(c);
    }
    return h;
}

SparseRow reduce_z(const Hermite& h, const SparseRow& v) {
    SparseRow cur = v;
    for (std::size_t i = 0; i < h.rows.size(); ++i) {
        Int rv = row_coeff(cur, h.pivot_cols[i]);
        if (rv == 0) continue;
        Int q = floor_div(rv, h.rows[i].front().second);
        if (q != 0) cur = row_combine(cur, Int(1), h.rows[i], -q);
    }
    return cur;
}

bool lattice_equal(const Hermite& a, const Hermite& b) {
    return a.cols == b.cols && a.pivot_cols == b.pivot_cols && a.rows == b.rows;
}

std::vector<std::vector<Int>> left_kernel(const std::vector<std::vector<Int>>& a, int cols) {
    int rows = static_cast<int>(a.size());
    // HNF of [A | I]; kernel rows are those whose A-part vanished
    std::vector<SparseRow> aug;
    for (int r = 0; r < rows; ++r) {
        SparseRow row;
        for (int c = 0; c < cols; ++c)
            if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0)
                row.push_back({c, a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]});
        row.push_back({cols + r, 1});
        aug.push_back(std::move(row));
    }
    Hermite h = hermite_z(std::move(aug), cols + rows);
    std::vector<std::vector<Int>> kernel;
    for (std::size_t i = 0; i < h.rows.size(); ++i) {
        if (h.pivot_cols[i] < cols) continue; // A-part still present
        std::vector<Int> x(static_cast<std::size_t>(rows), 0);
        for (const auto& [c, v] : h.rows[i]) {
            if (c < cols) throw std::logic_error("left_kernel: malformed row");
            x[static_cast<std::size_t>(c - cols)] = v;
        }
        kernel.push_back(std::move(x));
    }
    return kernel;
}

// ---------------------------------------------------------------------------
// Smith diagonal with sparse unit-pivot peeling

std::vector<Int> smith_diagonal(std::vector<SparseRow> rows, int cols) {
    std::vector<SparseRow> active;
    for (auto& r : rows)
        if (!r.empty()) active.push_back(std::move(r));
    long long units = 0;
    for (;;) {
        // find a +-1 entry
        std::size_t pr = active.size();
        int pc = -1;
        for (std::size_t i = 0; i < active.size(); ++i) {
            for (const auto& [c, v] : active[i])
                if (v == 1 || v == -1) {
                    pr = i;
                    pc = c;
                    break;
                }
            if (pc >= 0) break;
        }
        if (pc < 0) break;
        SparseRow pivot = std::move(active[pr]);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(pr));
        Int pv = row_coeff(pivot, pc);
        std::vector<SparseRow> next;
        next.reserve(active.size());
        for (auto& r : active) {
            Int rv = row_coeff(r, pc);
            SparseRow nr = (rv == 0) ? std::move(r) : row_combine(r, pv, pivot, -rv);
            // drop the pivot column entry (column elimination is implicit)
            if (!nr.empty()) next.push_back(std::move(nr));
        }
        active = std::move(next);
        ++units;
    }
    // residual: dense SNF (no unit entries left, typically tiny)
    std::vector<int> used_cols;
    for (const auto& r : active)
        for (const auto& [c, v] : r) used_cols.push_back(c);
    std::sort(used_cols.begin(), used_cols.end());
    used_cols.erase(std::unique(used_cols.begin(), used_cols.end()), used_cols.end());
    std::vector<Int> diag(static_cast<std::size_t>(units), Int(1));
    if (!active.empty()) {
        std::vector<std::vector<Int>> dense(active.size(),
                                            std::vector<Int>(used_cols.size(), 0));
        for (std::size_t i = 0; i < active.size(); ++i)
            for (const auto& [c, v] : active[i]) {
                auto pos = std::lower_bound(used_cols.begin(), used_cols.end(), c) -
                           used_cols.begin();
                dense[i][static_cast<std::size_t>(pos)] = v;
            }
        std::vector<Int> rd = snf_dense(dense, nullptr, nullptr);
        for (auto& d : rd) diag.push_back(d);
    }
    return diag;
}

// ---------------------------------------------------------------------------
// Graded quotients

namespace {

std::shared_ptr<QuotientContext> make_context(const GeneratorBasis& basis, Ring ring) {
    auto ctx = std::make_shared<QuotientContext>();
    ctx->ring = ring;
    ctx->degree = basis.degree;
    for (const auto& g : basis.generators) ctx->columns.push_back(g.key);
    if (ring == Ring::Z)
        for (const auto& g : basis.degenerates) ctx->columns.push_back(g.key);
    for (std::size_t i = 0; i < ctx->columns.size(); ++i)
        ctx->col_index[ctx->columns[i]] = static_cast<int>(i);
    return ctx;
}

SparseRow vector_to_row(const DiagramVector& v, const QuotientContext& ctx) {
    if (!v.is_zero() && v.degree() != ctx.degree)
        throw InputError("relation vector degree " + std::to_string(v.degree()) +
                         " does not match basis degree " + std::to_string(ctx.degree));
    SparseRow row;
    for (const auto& [key, t] : v.terms()) {
        if (ctx.ring == Ring::Q && t.degenerate) continue; // 2G=0 makes G=0 over Q
        auto it = ctx.col_index.find(key);
        if (it == ctx.col_index.end())
            throw InputError("diagram term outside the generator basis: " + key);
        row.push_back({it->second, t.coeff});
    }
    std::sort(row.begin(), row.end());
    return row;
}

} // namespace

IntegerMatrix relation_matrix(const GeneratorBasis& basis,
                              const std::vector<DiagramVector>& relations, Ring ring) {
    auto ctx = make_context(basis, ring);
    std::vector<SparseRow> rows;
    for (const auto& r : relations) rows.push_back(vector_to_row(r, *ctx));
    if (ring == Ring::Z) {
        for (const auto& g : basis.degenerates) {
            SparseRow r;
            r.push_back({ctx->col_index.at(g.key), Int(2)});
            rows.push_back(std::move(r));
        }
    }
    IntegerMatrix m(static_cast<int>(rows.size()), static_cast<int>(ctx->columns.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [c, v] : rows[i]) m.set(static_cast<int>(i), c, v);
    return m;
}

GradedQuotient present_quotient(const GeneratorBasis& basis,
                                const std::vector<DiagramVector>& relations, Ring ring) {
    auto ctx = make_context(basis, ring);
    std::vector<SparseRow> rows;
    rows.reserve(relations.size());
    for (const auto& r : relations) rows.push_back(vector_to_row(r, *ctx));
    long long relation_count = static_cast<long long>(rows.size());
    if (ring == Ring::Z) {
        for (const auto& g : basis.degenerates) {
            SparseRow r;
            r.push_back({ctx->col_index.at(g.key), Int(2)});
            rows.push_back(std::move(r));
            ++relation_count;
        }
    }
    GradedQuotient q;
    q.degree = basis.degree;
    q.ring = ring;
    q.generator_count = static_cast<long long>(ctx->columns.size());
    q.relation_count = relation_count;
    int cols = static_cast<int>(ctx->columns.size());
    if (ring == Ring::Q) {
        ctx->ech = echelon_q(std::move(rows), cols);
        q.free_rank = cols - ctx->ech.rank();
        std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
        for (int c : ctx->ech.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = 1;
        for (int c = 0; c < cols; ++c)
            if (!is_pivot[static_cast<std::size_t>(c)])
                q.basis_representatives.push_back(ctx->columns[static_cast<std::size_t>(c)]);
    } else {
        ctx->her = hermite_z(std::move(rows), cols);
        std::vector<Int> diag = smith_diagonal(ctx->her.rows, cols);
        q.free_rank = cols - static_cast<long long>(diag.size());
        for (const auto& d : diag)
            if (d > 1) q.torsion.push_back(d);
        std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
        for (int c : ctx->her.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = 1;
        for (int c = 0; c < cols; ++c)
            if (!is_pivot[static_cast<std::size_t>(c)])
                q.basis_representatives.push_back(ctx->columns[static_cast<std::size_t>(c)]);
    }
    q.ctx = ctx;
    return q;
}

std::string Coordinates::to_string() const {
    if (entries.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, v] : entries) {
        if (!first) out << ' ';
        out << (v < 0 ? "-" : "+") << boost::multiprecision::abs(v) << "*(" << key << ")";
        first = false;
    }
    return out.str();
}

Coordinates reduce_to_normal_form(const DiagramVector& v, const GradedQuotient& q) {
    if (!q.ctx) throw InputError("reduce_to_normal_form: quotient has no context");
    if (!v.is_zero() && v.degree() != q.degree)
        throw InputError("reduce_to_normal_form: degree mismatch");
    SparseRow row = vector_to_row(v, *q.ctx);
    Coordinates out;
    if (q.ring == Ring::Q) {
        auto red = reduce_q(q.ctx->ech, row);
        for (auto& [c, x] : red)
            out.entries.push_back({q.ctx->columns[static_cast<std::size_t>(c)], x});
    } else {
        SparseRow red = reduce_z(q.ctx->her, row);
        for (auto& [c, x] : red)
            out.entries.push_back({q.ctx->columns[static_cast<std::size_t>(c)], Rational(x)});
    }
    return out;
}

} // namespace clover

#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "clover/diagram.hpp"
#include "clover/enumeration.hpp"
#include "clover/ints.hpp"

namespace clover {

// Sparse integer matrix; no explicit zero entries are stored.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int get(int r, int c) const;
    void set(int r, int c, Int v);
    void add(int r, int c, const Int& v) { set(r, c, get(r, c) + v); }
    const std::map<std::pair<int, int>, Int>& entries() const { return entries_; }
    std::size_t nonzeros() const { return entries_.size(); }

    std::vector<std::vector<Int>> to_dense() const;
    static IntegerMatrix from_dense(const std::vector<std::vector<Int>>& d, int cols);

    // triplet text format: one "row col value" per line, '#' starts a comment
    std::string to_triplets() const;
    static IntegerMatrix from_triplets(const std::string& text);

    bool operator==(const IntegerMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::map<std::pair<int, int>, Int> entries_;
};

IntegerMatrix matrix_multiply(const IntegerMatrix& a, const IntegerMatrix& b);

struct SmithResult {
    IntegerMatrix u, d, v;          // u*a*v == d, u and v unimodular
    std::vector<Int> diagonal;      // nonzero entries, divisibility chain
};

// Exact Smith normal form with transforms; intended for desk-scale matrices.
SmithResult smith_normal_form(const IntegerMatrix& a);

// Invariant factors only (no transforms); sparse unit pivots are eliminated
// first so only a small residual core is handled densely.
std::vector<Int> smith_diagonal(std::vector<std::vector<std::pair<int, Int>>> rows, int cols);

Int determinant(const std::vector<std::vector<Int>>& a); // Bareiss, exact

// --- sparse exact elimination --------------------------------------------

using SparseRow = std::vector<std::pair<int, Int>>; // sorted by column

// Fully reduced fraction-free row echelon over Q (integer rows, per-row gcd
// normalization; each pivot column meets exactly one stored row).
struct Echelon {
    int cols = 0;
    std::vector<SparseRow> rows;  // pivot rows
    std::vector<int> pivot_cols;  // parallel to rows
    int rank() const { return static_cast<int>(rows.size()); }
};
Echelon echelon_q(std::vector<SparseRow> rows, int cols);

// Image of v in the complement coordinates (pivot coordinates eliminated
// exactly over Q); zero iff v lies in the row span.
std::vector<std::pair<int, Rational>> reduce_q(const Echelon& e, const SparseRow& v);

// Canonical row Hermite normal form of the lattice spanned by the rows.
struct Hermite {
    int cols = 0;
    std::vector<SparseRow> rows;  // pivot cols strictly increasing, pivots > 0
    std::vector<int> pivot_cols;
    int rank() const { return static_cast<int>(rows.size()); }
};
Hermite hermite_z(std::vector<SparseRow> rows, int cols);

// Unique representative of v modulo the lattice (pivot coordinates reduced
// into [0, pivot)); zero iff v lies in the lattice.
SparseRow reduce_z(const Hermite& h, const SparseRow& v);

bool lattice_equal(const Hermite& a, const Hermite& b);

// Basis of { x : x * A = 0 } for a dense matrix given as rows.
std::vector<std::vector<Int>> left_kernel(const std::vector<std::vector<Int>>& a, int cols);

// --- graded quotient presentations ----------------------------------------

enum class Ring { Z, Q };

struct QuotientContext {
    Ring ring = Ring::Q;
    int degree = 0;
    std::vector<std::string> columns;
    std::unordered_map<std::string, int> col_index;
    Echelon ech;   // ring Q
    Hermite her;   // ring Z
};

// Per-degree presentation result: free rank and torsion of the cokernel of
// the relation matrix, plus generator keys spanning a complement of the
// relation span over Q.
struct GradedQuotient {
    int degree = 0;
    Ring ring = Ring::Q;
    long long free_rank = 0;
    std::vector<Int> torsion; // each divides the next
    std::vector<std::string> basis_representatives;
    long long generator_count = 0;
    long long relation_count = 0;
    std::shared_ptr<const QuotientContext> ctx;
};

// Relation matrix over the basis layout (generators, then degenerates when
// ring is Z; 2G rows for degenerate classes appended automatically over Z).
IntegerMatrix relation_matrix(const GeneratorBasis& basis,
                              const std::vector<DiagramVector>& relations, Ring ring);

GradedQuotient present_quotient(const GeneratorBasis& basis,
                                const std::vector<DiagramVector>& relations, Ring ring);

// Sparse coordinates of v's normal form; zero iff v lies in the relation
// span over the quotient's ring.
struct Coordinates {
    std::vector<std::pair<std::string, Rational>> entries;
    bool is_zero() const { return entries.empty(); }
    std::string to_string() const;
};
Coordinates reduce_to_normal_form(const DiagramVector& v, const GradedQuotient& q);

} // namespace clover

#pragma once

#include <string>
#include <vector>

#include "clover/linalg.hpp"
#include "clover/model.hpp"

namespace clover {

// Per-degree sizes of the quotient tower B -> A -> Ao, plus the empty-
// alphabet column.
struct RankRow {
    int degree = 0;
    std::string group; // "B", "A", "Ao", "Aphi"
    long long generators = 0;
    long long relations = 0;
    long long free_rank = 0;
    std::vector<Int> torsion;
    double wall_ms = 0.0;
};

struct RankTable {
    Ring ring = Ring::Z;
    std::vector<RankRow> rows;
};

RankTable compute_ranks(const ManifoldModel& m, int degree_max, Ring ring,
                        const EnumerationOptions& opts = {});

// format: text = aligned table, machine = one "ranks key=value ..." line per
// row. The timing column is suppressible so identical inputs give
// byte-identical output.
std::string emit_rank_table(const RankTable& t, bool machine, bool timing);
RankTable parse_rank_table_machine(const std::string& text);

} // namespace clover

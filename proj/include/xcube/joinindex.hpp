#pragma once

// Denormalized join index: one cell per fact, carrying the referenced
// members' attributes next to the measures, persisted as Index.xml.
// In memory the member attribute rows are pooled and cells hold indices;
// serialization expands each cell in full, which is what eliminates joins
// in the document form.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xcube/model.hpp"
#include "xcube/query.hpp"

namespace xcube {

struct JoinIndex {
    WarehouseSchema schema;
    // Pooled member rows per dimension; cells reference them by position.
    std::vector<std::vector<DimensionMember>> members;
    struct Cell {
        std::vector<std::uint32_t> member_ref;  // per dimension
        std::vector<double> measures;           // per measure
    };
    std::vector<Cell> cells;
    std::uint64_t source_digest = 0;

    // Logical view of the denormalized structure.
    const std::string& cell_node(std::size_t cell, std::size_t dim) const {
        return members[dim][cells[cell].member_ref[dim]].id;
    }
    const std::string& cell_attribute(std::size_t cell, std::size_t dim, std::size_t attr) const {
        return members[dim][cells[cell].member_ref[dim]].attr_values[attr];
    }

    bool operator==(const JoinIndex&) const = default;
};

// Expands every fact with its members' attribute rows. The warehouse must
// validate cleanly; a dangling reference raises DataError naming the cell
// and dimension.
JoinIndex build_index(const Warehouse& w);

void serialize_index(const JoinIndex& idx, ByteSink& sink);
std::string serialize_index(const JoinIndex& idx);
Parsed<JoinIndex> parse_index(XmlSource& doc, const WarehouseSchema& schema);
Parsed<JoinIndex> parse_index(std::string_view bytes, const WarehouseSchema& schema);

// A query rewritten against the index: the join equalities disappear and the
// selections become per-cell attribute tests.
struct IndexQuery {
    std::vector<Predicate> predicate;  // conjunction; empty = true
    std::vector<std::string> group_by;
    std::vector<std::pair<std::size_t, std::size_t>> group_refs;
    std::vector<AggSpec> aggregations;
};

IndexQuery rewrite_for_index(const Query& q);  // requires a bound query

// --- analytic cost models -----------------------------------------------------

struct CostParams {
    std::uint64_t cell_count = 0;
    std::uint64_t dimension_count = 0;
    std::vector<std::uint64_t> node_counts;  // |d_i| per dimension
    std::vector<std::uint64_t> attr_counts;  // |a_i| per dimension

    static CostParams from(const Warehouse& w);
};

// (|cell| * |dimension|) * (|dimension| + sum_i d_i * a_i)
double cost_no_index(const CostParams& p);
// |cell| * (|dimension| + sum_i a_i)
double cost_index(const CostParams& p);

struct CostCurveRow {
    std::uint64_t cells;
    double no_index;
    double index;
    double ratio;  // no_index / index, 0 when index cost is 0
};

std::vector<CostCurveRow> cost_curve(const CostParams& p,
                                     const std::vector<std::uint64_t>& cell_counts);
std::string cost_curve_csv(const std::vector<CostCurveRow>& rows);

}  // namespace xcube

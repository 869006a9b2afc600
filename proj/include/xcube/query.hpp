#pragma once

// Decision-support query dialect: a fixed-shape FLWOR subset with explicit
// group by(...) and aggregation(op, measure) extensions. The parser is
// reentrant and stateless; Query values are immutable after binding.
//
// Grammar (informal):
//   query      := forClause+ letClause* whereClause? groupClause returnClause
//   forClause  := "for" binding ("," binding)*
//   binding    := Var "in" path
//   letClause  := "let" Var ":=" path
//   whereClause:= "where" conjunct ("and" conjunct)*
//   conjunct   := path "=" (StringLiteral | path)
//   groupClause:= "group" "by" "(" attr ("," attr)* ")"
//   returnClause:= "return" ("name" "=" StringLiteral ",")?
//                  "aggregation" "(" op "," measure ")" ("," ...)*
//
// A binding path of the form .../Level[@node='D']/node iterates dimension D;
// .../CubeFact/cube/Cell (or CubeFacts, both spellings are accepted and
// normalized) iterates facts. Conjuncts equating two paths are the standard
// fact/dimension join equalities; they are recognized and absorbed rather
// than represented as predicates. Disjunction is rejected with a clear
// message. Note: the dialect's sample queries bind let variables (e.g. $b)
// without declaring them in a for clause; undeclared variables are treated
// as aliases of the dimension iterator when there is exactly one.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "xcube/diag.hpp"
#include "xcube/model.hpp"

namespace xcube {

struct Predicate {
    std::string dimension;
    std::string attribute;
    std::string value;
    // filled by bind_query
    std::size_t dim_idx = npos;
    std::size_t attr_idx = npos;

    bool operator==(const Predicate& o) const {
        return dimension == o.dimension && attribute == o.attribute && value == o.value;
    }
};

enum class AggOp { Sum, Avg, Count, Min, Max };

std::string_view agg_op_name(AggOp op);

struct AggSpec {
    AggOp op;
    std::string measure;
    std::size_t measure_idx = npos;  // filled by bind_query

    // Column label used in result tables and CSV headers: agg:<op>(<measure>).
    std::string label() const;

    bool operator==(const AggSpec& o) const { return op == o.op && measure == o.measure; }
};

struct Query {
    std::vector<Predicate> selections;      // conjunctive
    std::vector<std::string> group_by;      // ordered
    std::vector<AggSpec> aggregations;
    std::string source_text;

    // Dimension names asserted by absorbed join boilerplate
    // ($f/dimension/@id='customers'); checked at bind time only.
    std::vector<std::string> join_dimension_hints;

    bool bound = false;
    std::vector<std::pair<std::size_t, std::size_t>> group_refs;  // (dim, attr) per group_by

    // Semantic equality: selections/group_by/aggregations, ignoring source
    // text and bind annotations.
    bool operator==(const Query& o) const {
        return selections == o.selections && group_by == o.group_by &&
               aggregations == o.aggregations;
    }
};

struct RepresentativeAttributes {
    std::vector<std::string> attrs;  // deduplicated, in schema order

    bool operator==(const RepresentativeAttributes&) const = default;
};

Parsed<Query> parse_query(std::string_view text);

// Checks names against the schema and fills the resolved indices.
// Returns an empty vector on success and sets q.bound.
std::vector<Diagnostic> bind_query(Query& q, const WarehouseSchema& schema);

// Canonical dialect text; parse_query(print_query(q)) reproduces q.
std::string print_query(const Query& q);

// Selection attributes united with group-by attributes. Requires a bound query.
RepresentativeAttributes representative_attributes(const Query& q);

// Same set as resolved (dimension, attribute) positions, sorted.
std::vector<std::pair<std::size_t, std::size_t>> representative_refs(const Query& q);

// Workload file: queries separated by a line containing only "---".
Parsed<std::vector<Query>> parse_workload(std::string_view text);
std::string print_workload(const std::vector<Query>& queries);

}  // namespace xcube

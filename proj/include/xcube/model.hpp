#pragma once

// Star-schema warehouse image of the three documents: Schema.xml,
// Dimensions.xml, Facts.xml. All types are immutable once built and safe
// to share across threads for reading.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xcube/diag.hpp"
#include "xcube/util.hpp"
#include "xcube/xml.hpp"

namespace xcube {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct WarehouseSchema {
    std::vector<std::string> dimension_names;
    std::vector<std::vector<std::string>> attribute_names;  // per dimension, schema order
    std::vector<std::string> measure_names;

    std::size_t dim_index(std::string_view name) const;          // npos if unknown
    std::size_t attr_index(std::size_t dim, std::string_view name) const;
    std::size_t measure_index(std::string_view name) const;

    // Resolves an unqualified attribute name to its unique (dimension, attribute)
    // position. Returns the number of matches; out params valid when it is 1.
    std::size_t resolve_attribute(std::string_view name, std::size_t& dim_out,
                                  std::size_t& attr_out) const;

    std::vector<Diagnostic> check() const;  // structural invariants
    bool operator==(const WarehouseSchema&) const = default;
};

struct DimensionMember {
    std::string id;
    std::vector<std::string> attr_values;  // aligned with the schema attribute list

    bool operator==(const DimensionMember&) const = default;
};

struct DimensionSet {
    std::vector<std::vector<DimensionMember>> members;  // per dimension

    bool operator==(const DimensionSet&) const = default;
};

struct FactCell {
    std::vector<std::string> dim_refs;  // member ids, aligned with schema dimensions
    std::vector<double> measures;       // aligned with schema measures

    bool operator==(const FactCell&) const = default;
};

struct Warehouse {
    WarehouseSchema schema;
    DimensionSet dimensions;
    std::vector<FactCell> facts;

    bool operator==(const Warehouse&) const = default;
};

struct ValidationFinding {
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;
    bool empty() const { return findings.empty(); }
    std::string str() const;
};

// --- parsing ---------------------------------------------------------------

Parsed<WarehouseSchema> parse_schema(XmlSource& doc);
Parsed<DimensionSet> parse_dimensions(XmlSource& doc, const WarehouseSchema& schema);
Parsed<std::vector<FactCell>> parse_facts(XmlSource& doc, const WarehouseSchema& schema);

Parsed<WarehouseSchema> parse_schema(std::string_view bytes);
Parsed<DimensionSet> parse_dimensions(std::string_view bytes, const WarehouseSchema& schema);
Parsed<std::vector<FactCell>> parse_facts(std::string_view bytes, const WarehouseSchema& schema);

// --- serialization (canonical byte-exact formats) ----------------------------

void serialize_schema(const WarehouseSchema& schema, ByteSink& sink);
void serialize_dimensions(const DimensionSet& dims, const WarehouseSchema& schema, ByteSink& sink);
void serialize_facts(const std::vector<FactCell>& facts, const WarehouseSchema& schema,
                     ByteSink& sink);

std::string serialize_schema(const WarehouseSchema& schema);
std::string serialize_dimensions(const DimensionSet& dims, const WarehouseSchema& schema);
std::string serialize_facts(const std::vector<FactCell>& facts, const WarehouseSchema& schema);

// FNV-1a over the canonical Dimensions.xml bytes followed by the canonical
// Facts.xml bytes. Ties a join index to the warehouse it was built from.
std::uint64_t warehouse_digest(const Warehouse& w);
std::uint64_t document_digest(std::string_view dimensions_bytes, std::string_view facts_bytes);

// --- validation --------------------------------------------------------------

ValidationReport validate_warehouse(const Warehouse& w);

// --- directory I/O (Schema.xml / Dimensions.xml / Facts.xml) -----------------

Warehouse load_warehouse(const std::string& dir);                    // throws DataError
void save_warehouse(const Warehouse& w, const std::string& dir);     // throws DataError

}  // namespace xcube

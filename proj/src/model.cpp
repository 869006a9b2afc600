#include "xcube/model.hpp"

#include <algorithm>
#include <filesystem>
#include <unordered_map>
#include <unordered_set>

namespace xcube {

namespace {

// Parse helpers share this: collect diagnostics, stop after too many.
constexpr std::size_t kMaxDiags = 50;

bool too_many(std::vector<Diagnostic>& diags) {
    if (diags.size() < kMaxDiags) return false;
    if (diags.size() == kMaxDiags)
        diags.push_back({"further problems suppressed", 0, 0, ""});
    return true;
}

void take_reader_error(XmlReader& reader, std::vector<Diagnostic>& diags) {
    if (reader.error()) diags.push_back(*reader.error());
}

}  // namespace

std::size_t WarehouseSchema::dim_index(std::string_view name) const {
    for (std::size_t i = 0; i < dimension_names.size(); ++i)
        if (dimension_names[i] == name) return i;
    return npos;
}

std::size_t WarehouseSchema::attr_index(std::size_t dim, std::string_view name) const {
    if (dim >= attribute_names.size()) return npos;
    const auto& attrs = attribute_names[dim];
    for (std::size_t i = 0; i < attrs.size(); ++i)
        if (attrs[i] == name) return i;
    return npos;
}

std::size_t WarehouseSchema::measure_index(std::string_view name) const {
    for (std::size_t i = 0; i < measure_names.size(); ++i)
        if (measure_names[i] == name) return i;
    return npos;
}

std::size_t WarehouseSchema::resolve_attribute(std::string_view name, std::size_t& dim_out,
                                               std::size_t& attr_out) const {
    std::size_t matches = 0;
    for (std::size_t d = 0; d < attribute_names.size(); ++d) {
        for (std::size_t a = 0; a < attribute_names[d].size(); ++a) {
            if (attribute_names[d][a] == name) {
                if (++matches == 1) {
                    dim_out = d;
                    attr_out = a;
                }
            }
        }
    }
    return matches;
}

std::vector<Diagnostic> WarehouseSchema::check() const {
    std::vector<Diagnostic> diags;
    auto add = [&](std::string msg) { diags.push_back({std::move(msg), 0, 0, ""}); };

    if (attribute_names.size() != dimension_names.size())
        add("attribute lists do not align with dimension names");
    std::unordered_set<std::string_view> seen;
    for (const auto& d : dimension_names) {
        if (d.empty()) add("empty dimension name");
        if (!seen.insert(d).second) add("duplicate dimension name '" + d + "'");
    }
    for (std::size_t d = 0; d < attribute_names.size(); ++d) {
        if (attribute_names[d].empty())
            add("dimension '" + dimension_names[d] + "' has no attributes");
        std::unordered_set<std::string_view> attrs;
        for (const auto& a : attribute_names[d]) {
            if (a.empty()) add("empty attribute name in dimension '" + dimension_names[d] + "'");
            if (!attrs.insert(a).second)
                add("duplicate attribute '" + a + "' in dimension '" + dimension_names[d] + "'");
        }
    }
    seen.clear();
    for (const auto& m : measure_names) {
        if (m.empty()) add("empty measure name");
        if (!seen.insert(m).second) add("duplicate measure name '" + m + "'");
    }
    return diags;
}

std::string ValidationReport::str() const {
    std::string s;
    for (const auto& f : findings) {
        if (!s.empty()) s += '\n';
        s += f.message;
    }
    return s;
}

// --- Schema.xml ---------------------------------------------------------------

Parsed<WarehouseSchema> parse_schema(XmlSource& doc) {
    Parsed<WarehouseSchema> out;
    XmlReader reader(doc);
    WarehouseSchema schema;

    if (!reader.next() || reader.event() != XmlEvent::StartElement || reader.name() != "schema") {
        take_reader_error(reader, out.diags);
        if (out.diags.empty()) out.diags.push_back({"expected root element <schema>", 0, 0, "/"});
        return out;
    }
    while (reader.next()) {
        if (reader.event() == XmlEvent::EndElement) {
            if (reader.name() == "schema") break;
            continue;
        }
        if (reader.name() == "dimension") {
            const std::string* name = reader.attr("name");
            if (!name) {
                out.diags.push_back(reader.make_error("<dimension> is missing @name"));
                return out;
            }
            schema.dimension_names.push_back(*name);
            schema.attribute_names.emplace_back();
        } else if (reader.name() == "attribute") {
            const std::string* name = reader.attr("name");
            if (!name) {
                out.diags.push_back(reader.make_error("<attribute> is missing @name"));
                return out;
            }
            if (schema.attribute_names.empty()) {
                out.diags.push_back(reader.make_error("<attribute> outside <dimension>"));
                return out;
            }
            schema.attribute_names.back().push_back(*name);
        } else if (reader.name() == "measure") {
            const std::string* name = reader.attr("name");
            if (!name) {
                out.diags.push_back(reader.make_error("<measure> is missing @name"));
                return out;
            }
            schema.measure_names.push_back(*name);
        } else {
            out.diags.push_back(reader.make_error("unexpected element <" + reader.name() + ">"));
            return out;
        }
    }
    take_reader_error(reader, out.diags);
    if (!out.diags.empty()) return out;

    auto invariant_diags = schema.check();
    if (!invariant_diags.empty()) {
        out.diags = std::move(invariant_diags);
        return out;
    }
    out.value = std::move(schema);
    return out;
}

// --- Dimensions.xml -------------------------------------------------------------

Parsed<DimensionSet> parse_dimensions(XmlSource& doc, const WarehouseSchema& schema) {
    Parsed<DimensionSet> out;
    XmlReader reader(doc);
    DimensionSet dims;
    dims.members.resize(schema.dimension_names.size());

    if (!reader.next() || reader.event() != XmlEvent::StartElement ||
        reader.name() != "dimensionData") {
        take_reader_error(reader, out.diags);
        if (out.diags.empty())
            out.diags.push_back({"expected root element <dimensionData>", 0, 0, "/"});
        return out;
    }

    std::size_t cur_dim = npos;
    DimensionMember member;
    std::vector<bool> attr_seen;
    bool in_node = false;

    while (reader.next()) {
        if (reader.event() == XmlEvent::StartElement) {
            const std::string& el = reader.name();
            if (el == "classification") {
                continue;
            } else if (el == "Level") {
                const std::string* dim_name = reader.attr("node");
                if (!dim_name) {
                    out.diags.push_back(reader.make_error("<Level> is missing @node"));
                    if (too_many(out.diags)) return out;
                    cur_dim = npos;
                    continue;
                }
                cur_dim = schema.dim_index(*dim_name);
                if (cur_dim == npos) {
                    out.diags.push_back(
                        reader.make_error("unknown dimension '" + *dim_name + "'"));
                    if (too_many(out.diags)) return out;
                }
            } else if (el == "node") {
                if (cur_dim == npos) continue;  // already diagnosed
                const std::string* id = reader.attr("id");
                if (!id) {
                    out.diags.push_back(reader.make_error("<node> is missing @id"));
                    if (too_many(out.diags)) return out;
                    in_node = false;
                    continue;
                }
                member.id = *id;
                member.attr_values.assign(schema.attribute_names[cur_dim].size(), {});
                attr_seen.assign(member.attr_values.size(), false);
                in_node = true;
            } else if (el == "attribute") {
                if (!in_node || cur_dim == npos) continue;
                const std::string* name = reader.attr("name");
                const std::string* value = reader.attr("value");
                if (!name || !value) {
                    out.diags.push_back(
                        reader.make_error("<attribute> needs @name and @value"));
                    if (too_many(out.diags)) return out;
                    continue;
                }
                std::size_t a = schema.attr_index(cur_dim, *name);
                if (a == npos) {
                    out.diags.push_back(reader.make_error(
                        "attribute '" + *name + "' is not declared for dimension '" +
                        schema.dimension_names[cur_dim] + "'"));
                    if (too_many(out.diags)) return out;
                    continue;
                }
                if (attr_seen[a]) {
                    out.diags.push_back(
                        reader.make_error("duplicate attribute '" + *name + "'"));
                    if (too_many(out.diags)) return out;
                    continue;
                }
                attr_seen[a] = true;
                member.attr_values[a] = *value;
            } else {
                out.diags.push_back(reader.make_error("unexpected element <" + el + ">"));
                if (too_many(out.diags)) return out;
            }
        } else {  // EndElement
            if (reader.name() == "node" && in_node && cur_dim != npos) {
                for (std::size_t a = 0; a < attr_seen.size(); ++a) {
                    if (!attr_seen[a]) {
                        out.diags.push_back(reader.make_error(
                            "member '" + member.id + "' is missing attribute '" +
                            schema.attribute_names[cur_dim][a] + "'"));
                        if (too_many(out.diags)) return out;
                    }
                }
                dims.members[cur_dim].push_back(std::move(member));
                member = {};
                in_node = false;
            } else if (reader.name() == "Level") {
                cur_dim = npos;
            }
        }
    }
    take_reader_error(reader, out.diags);
    if (!out.diags.empty()) return out;
    out.value = std::move(dims);
    return out;
}

// --- Facts.xml -------------------------------------------------------------------

Parsed<std::vector<FactCell>> parse_facts(XmlSource& doc, const WarehouseSchema& schema) {
    Parsed<std::vector<FactCell>> out;
    XmlReader reader(doc);
    std::vector<FactCell> facts;

    if (!reader.next() || reader.event() != XmlEvent::StartElement ||
        (reader.name() != "CubeFact" && reader.name() != "CubeFacts")) {
        take_reader_error(reader, out.diags);
        if (out.diags.empty())
            out.diags.push_back({"expected root element <CubeFact>", 0, 0, "/"});
        return out;
    }

    const std::size_t n_dims = schema.dimension_names.size();
    const std::size_t n_measures = schema.measure_names.size();

    FactCell cell;
    std::vector<bool> meas_seen, ref_seen;
    bool in_cell = false;

    while (reader.next()) {
        if (reader.event() == XmlEvent::StartElement) {
            const std::string& el = reader.name();
            if (el == "cube") {
                continue;
            } else if (el == "Cell") {
                cell.dim_refs.assign(n_dims, {});
                cell.measures.assign(n_measures, 0.0);
                meas_seen.assign(n_measures, false);
                ref_seen.assign(n_dims, false);
                in_cell = true;
            } else if (el == "fact") {
                if (!in_cell) continue;
                const std::string* id = reader.attr("id");
                const std::string* value = reader.attr("value");
                if (!id || !value) {
                    out.diags.push_back(reader.make_error("<fact> needs @id and @value"));
                    if (too_many(out.diags)) return out;
                    continue;
                }
                std::size_t m = schema.measure_index(*id);
                if (m == npos) {
                    out.diags.push_back(reader.make_error("unknown measure '" + *id + "'"));
                    if (too_many(out.diags)) return out;
                    continue;
                }
                auto v = parse_double(*value);
                if (!v) {
                    out.diags.push_back(reader.make_error(
                        "non-numeric measure value '" + *value + "' for '" + *id + "'"));
                    if (too_many(out.diags)) return out;
                    continue;
                }
                if (meas_seen[m]) {
                    out.diags.push_back(reader.make_error("duplicate measure '" + *id + "'"));
                    if (too_many(out.diags)) return out;
                    continue;
                }
                meas_seen[m] = true;
                cell.measures[m] = *v;
            } else if (el == "dimension") {
                if (!in_cell) continue;
                const std::string* id = reader.attr("id");
                const std::string* value = reader.attr("value");
                if (!id || !value) {
                    out.diags.push_back(reader.make_error("<dimension> needs @id and @value"));
                    if (too_many(out.diags)) return out;
                    continue;
                }
                std::size_t d = schema.dim_index(*id);
                if (d == npos) {
                    out.diags.push_back(reader.make_error("unknown dimension '" + *id + "'"));
                    if (too_many(out.diags)) return out;
                    continue;
                }
                if (ref_seen[d]) {
                    out.diags.push_back(
                        reader.make_error("duplicate dimension reference '" + *id + "'"));
                    if (too_many(out.diags)) return out;
                    continue;
                }
                ref_seen[d] = true;
                cell.dim_refs[d] = *value;
            } else {
                out.diags.push_back(reader.make_error("unexpected element <" + el + ">"));
                if (too_many(out.diags)) return out;
            }
        } else {  // EndElement
            if (reader.name() == "Cell" && in_cell) {
                for (std::size_t d = 0; d < n_dims; ++d) {
                    if (!ref_seen[d]) {
                        out.diags.push_back(reader.make_error(
                            "cell " + std::to_string(facts.size()) +
                            " is missing a reference to dimension '" +
                            schema.dimension_names[d] + "'"));
                        if (too_many(out.diags)) return out;
                    }
                }
                for (std::size_t m = 0; m < n_measures; ++m) {
                    if (!meas_seen[m]) {
                        out.diags.push_back(reader.make_error(
                            "cell " + std::to_string(facts.size()) + " is missing measure '" +
                            schema.measure_names[m] + "'"));
                        if (too_many(out.diags)) return out;
                    }
                }
                facts.push_back(std::move(cell));
                cell = {};
                in_cell = false;
            }
        }
    }
    take_reader_error(reader, out.diags);
    if (!out.diags.empty()) return out;
    out.value = std::move(facts);
    return out;
}

Parsed<WarehouseSchema> parse_schema(std::string_view bytes) {
    MemoryXmlSource src(bytes);
    return parse_schema(src);
}

Parsed<DimensionSet> parse_dimensions(std::string_view bytes, const WarehouseSchema& schema) {
    MemoryXmlSource src(bytes);
    return parse_dimensions(src, schema);
}

Parsed<std::vector<FactCell>> parse_facts(std::string_view bytes, const WarehouseSchema& schema) {
    MemoryXmlSource src(bytes);
    return parse_facts(src, schema);
}

// --- serializers -------------------------------------------------------------------

void serialize_schema(const WarehouseSchema& schema, ByteSink& sink) {
    XmlWriter w(sink);
    w.declaration();
    w.open("schema");
    for (std::size_t d = 0; d < schema.dimension_names.size(); ++d) {
        w.open("dimension", {{"name", schema.dimension_names[d]}});
        for (const auto& a : schema.attribute_names[d]) w.leaf("attribute", {{"name", a}});
        w.close();
    }
    for (const auto& m : schema.measure_names) w.leaf("measure", {{"name", m}});
    w.close();
}

void serialize_dimensions(const DimensionSet& dims, const WarehouseSchema& schema,
                          ByteSink& sink) {
    XmlWriter w(sink);
    w.declaration();
    w.open("dimensionData");
    w.open("classification");
    for (std::size_t d = 0; d < schema.dimension_names.size(); ++d) {
        w.open("Level", {{"node", schema.dimension_names[d]}});
        const auto& members = d < dims.members.size() ? dims.members[d]
                                                      : std::vector<DimensionMember>{};
        for (const auto& m : members) {
            w.open("node", {{"id", m.id}});
            for (std::size_t a = 0; a < m.attr_values.size(); ++a)
                w.leaf("attribute",
                       {{"name", schema.attribute_names[d][a]}, {"value", m.attr_values[a]}});
            w.close();
        }
        w.close();
    }
    w.close();
    w.close();
}

void serialize_facts(const std::vector<FactCell>& facts, const WarehouseSchema& schema,
                     ByteSink& sink) {
    XmlWriter w(sink);
    w.declaration();
    w.open("CubeFact");
    w.open("cube");
    for (const auto& cell : facts) {
        w.open("Cell");
        for (std::size_t m = 0; m < cell.measures.size(); ++m)
            w.leaf("fact", {{"id", schema.measure_names[m]},
                            {"value", fmt_double(cell.measures[m])}});
        for (std::size_t d = 0; d < cell.dim_refs.size(); ++d)
            w.leaf("dimension",
                   {{"id", schema.dimension_names[d]}, {"value", cell.dim_refs[d]}});
        w.close();
    }
    w.close();
    w.close();
}

std::string serialize_schema(const WarehouseSchema& schema) {
    StringSink sink;
    serialize_schema(schema, sink);
    return std::move(sink.out);
}

std::string serialize_dimensions(const DimensionSet& dims, const WarehouseSchema& schema) {
    StringSink sink;
    serialize_dimensions(dims, schema, sink);
    return std::move(sink.out);
}

std::string serialize_facts(const std::vector<FactCell>& facts, const WarehouseSchema& schema) {
    StringSink sink;
    serialize_facts(facts, schema, sink);
    return std::move(sink.out);
}

std::uint64_t warehouse_digest(const Warehouse& w) {
    FnvSink sink;
    serialize_dimensions(w.dimensions, w.schema, sink);
    serialize_facts(w.facts, w.schema, sink);
    return sink.hash.state;
}

std::uint64_t document_digest(std::string_view dimensions_bytes, std::string_view facts_bytes) {
    Fnv64 hash;
    hash.update(dimensions_bytes);
    hash.update(facts_bytes);
    return hash.state;
}

// --- validation ----------------------------------------------------------------------

ValidationReport validate_warehouse(const Warehouse& w) {
    ValidationReport report;
    auto add = [&](std::string msg) { report.findings.push_back({std::move(msg)}); };

    for (auto& d : w.schema.check()) add(d.message);

    const std::size_t n_dims = w.schema.dimension_names.size();
    if (w.dimensions.members.size() != n_dims) {
        add("dimension set has " + std::to_string(w.dimensions.members.size()) +
            " member lists for " + std::to_string(n_dims) + " dimensions");
        return report;
    }

    std::vector<std::unordered_set<std::string_view>> ids(n_dims);
    for (std::size_t d = 0; d < n_dims; ++d) {
        ids[d].reserve(w.dimensions.members[d].size() * 2);
        for (const auto& m : w.dimensions.members[d]) {
            if (!ids[d].insert(m.id).second)
                add("duplicate member id '" + m.id + "' in dimension '" +
                    w.schema.dimension_names[d] + "'");
            if (m.attr_values.size() != w.schema.attribute_names[d].size())
                add("member '" + m.id + "' of dimension '" + w.schema.dimension_names[d] +
                    "' has " + std::to_string(m.attr_values.size()) + " attributes, schema has " +
                    std::to_string(w.schema.attribute_names[d].size()));
        }
    }

    for (std::size_t i = 0; i < w.facts.size(); ++i) {
        const auto& cell = w.facts[i];
        if (cell.dim_refs.size() != n_dims) {
            add("cell " + std::to_string(i) + " has " + std::to_string(cell.dim_refs.size()) +
                " dimension references, schema has " + std::to_string(n_dims));
            continue;
        }
        if (cell.measures.size() != w.schema.measure_names.size())
            add("cell " + std::to_string(i) + " has " + std::to_string(cell.measures.size()) +
                " measures, schema has " + std::to_string(w.schema.measure_names.size()));
        for (std::size_t d = 0; d < n_dims; ++d) {
            if (!ids[d].contains(cell.dim_refs[d]))
                add("cell " + std::to_string(i) + " references missing member '" +
                    cell.dim_refs[d] + "' in dimension '" + w.schema.dimension_names[d] + "'");
        }
    }
    return report;
}

// --- directory I/O ---------------------------------------------------------------------

Warehouse load_warehouse(const std::string& dir) {
    namespace fs = std::filesystem;
    auto need = [&](const char* name) {
        fs::path p = fs::path(dir) / name;
        if (!fs::exists(p)) throw DataError("missing warehouse document: " + p.string());
        return p.string();
    };

    Warehouse w;
    {
        FileXmlSource src(need("Schema.xml"));
        auto parsed = parse_schema(src);
        if (!parsed) throw DataError("Schema.xml: " + format_diagnostics(parsed.diags));
        w.schema = std::move(*parsed);
    }
    {
        FileXmlSource src(need("Dimensions.xml"));
        auto parsed = parse_dimensions(src, w.schema);
        if (!parsed) throw DataError("Dimensions.xml: " + format_diagnostics(parsed.diags));
        w.dimensions = std::move(*parsed);
    }
    {
        FileXmlSource src(need("Facts.xml"));
        auto parsed = parse_facts(src, w.schema);
        if (!parsed) throw DataError("Facts.xml: " + format_diagnostics(parsed.diags));
        w.facts = std::move(*parsed);
    }
    return w;
}

void save_warehouse(const Warehouse& w, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create directory " + dir + ": " + ec.message());
    write_file((fs::path(dir) / "Schema.xml").string(), serialize_schema(w.schema));
    write_file((fs::path(dir) / "Dimensions.xml").string(),
               serialize_dimensions(w.dimensions, w.schema));
    write_file((fs::path(dir) / "Facts.xml").string(), serialize_facts(w.facts, w.schema));
}

}  // namespace xcube

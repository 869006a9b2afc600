#include "xcube/joinindex.hpp"

#include <unordered_map>

namespace xcube {

JoinIndex build_index(const Warehouse& w) {
    JoinIndex idx;
    idx.schema = w.schema;
    idx.members = w.dimensions.members;
    idx.source_digest = warehouse_digest(w);

    const std::size_t n_dims = w.schema.dimension_names.size();
    std::vector<std::unordered_map<std::string_view, std::uint32_t>> lookup(n_dims);
    for (std::size_t d = 0; d < n_dims; ++d) {
        lookup[d].reserve(idx.members[d].size() * 2);
        for (std::uint32_t i = 0; i < idx.members[d].size(); ++i)
            lookup[d].emplace(idx.members[d][i].id, i);
    }

    idx.cells.reserve(w.facts.size());
    for (std::size_t c = 0; c < w.facts.size(); ++c) {
        const FactCell& fact = w.facts[c];
        JoinIndex::Cell cell;
        cell.member_ref.reserve(n_dims);
        for (std::size_t d = 0; d < n_dims; ++d) {
            auto it = lookup[d].find(fact.dim_refs[d]);
            if (it == lookup[d].end())
                throw DataError("cell " + std::to_string(c) + " references missing member '" +
                                fact.dim_refs[d] + "' in dimension '" +
                                w.schema.dimension_names[d] + "'");
            cell.member_ref.push_back(it->second);
        }
        cell.measures = fact.measures;
        idx.cells.push_back(std::move(cell));
    }
    return idx;
}

void serialize_index(const JoinIndex& idx, ByteSink& sink) {
    XmlWriter w(sink);
    w.declaration();
    w.open("CubeIndex", {{"digest", to_hex(idx.source_digest)}});
    for (const auto& cell : idx.cells) {
        w.open("Cell");
        for (std::size_t m = 0; m < cell.measures.size(); ++m)
            w.leaf("fact", {{"id", idx.schema.measure_names[m]},
                            {"value", fmt_double(cell.measures[m])}});
        for (std::size_t d = 0; d < cell.member_ref.size(); ++d) {
            const DimensionMember& member = idx.members[d][cell.member_ref[d]];
            w.open("dimension", {{"id", idx.schema.dimension_names[d]}, {"node", member.id}});
            for (std::size_t a = 0; a < member.attr_values.size(); ++a)
                w.leaf("attribute", {{"name", idx.schema.attribute_names[d][a]},
                                     {"value", member.attr_values[a]}});
            w.close();
        }
        w.close();
    }
    w.close();
}

std::string serialize_index(const JoinIndex& idx) {
    StringSink sink;
    serialize_index(idx, sink);
    return std::move(sink.out);
}

Parsed<JoinIndex> parse_index(XmlSource& doc, const WarehouseSchema& schema) {
    Parsed<JoinIndex> out;
    XmlReader reader(doc);
    JoinIndex idx;
    idx.schema = schema;
    idx.members.resize(schema.dimension_names.size());

    const std::size_t n_dims = schema.dimension_names.size();
    const std::size_t n_measures = schema.measure_names.size();
    std::vector<std::unordered_map<std::string, std::uint32_t>> lookup(n_dims);

    if (!reader.next() || reader.event() != XmlEvent::StartElement ||
        reader.name() != "CubeIndex") {
        if (reader.error()) out.diags.push_back(*reader.error());
        else out.diags.push_back({"expected root element <CubeIndex>", 0, 0, "/"});
        return out;
    }
    if (const std::string* digest = reader.attr("digest")) {
        auto value = from_hex(*digest);
        if (!value) {
            out.diags.push_back(reader.make_error("bad digest attribute"));
            return out;
        }
        idx.source_digest = *value;
    }

    JoinIndex::Cell cell;
    std::vector<bool> meas_seen, dim_seen;
    bool in_cell = false;
    std::size_t cur_dim = npos;
    DimensionMember member;
    std::vector<bool> attr_seen;

    auto fail = [&](Diagnostic d) {
        out.diags.push_back(std::move(d));
        return out;
    };

    while (reader.next()) {
        if (reader.event() == XmlEvent::StartElement) {
            const std::string& el = reader.name();
            if (el == "Cell") {
                cell.member_ref.assign(n_dims, 0);
                cell.measures.assign(n_measures, 0.0);
                meas_seen.assign(n_measures, false);
                dim_seen.assign(n_dims, false);
                in_cell = true;
            } else if (el == "fact") {
                if (!in_cell) return fail(reader.make_error("<fact> outside <Cell>"));
                const std::string* id = reader.attr("id");
                const std::string* value = reader.attr("value");
                if (!id || !value) return fail(reader.make_error("<fact> needs @id and @value"));
                std::size_t m = schema.measure_index(*id);
                if (m == npos) return fail(reader.make_error("unknown measure '" + *id + "'"));
                auto v = parse_double(*value);
                if (!v) return fail(reader.make_error("non-numeric measure value '" + *value + "'"));
                if (meas_seen[m]) return fail(reader.make_error("duplicate measure '" + *id + "'"));
                meas_seen[m] = true;
                cell.measures[m] = *v;
            } else if (el == "dimension") {
                if (!in_cell) return fail(reader.make_error("<dimension> outside <Cell>"));
                const std::string* id = reader.attr("id");
                const std::string* node = reader.attr("node");
                if (!id || !node) return fail(reader.make_error("<dimension> needs @id and @node"));
                cur_dim = schema.dim_index(*id);
                if (cur_dim == npos) return fail(reader.make_error("unknown dimension '" + *id + "'"));
                if (dim_seen[cur_dim])
                    return fail(reader.make_error("duplicate dimension '" + *id + "' in cell"));
                dim_seen[cur_dim] = true;
                member.id = *node;
                member.attr_values.assign(schema.attribute_names[cur_dim].size(), {});
                attr_seen.assign(member.attr_values.size(), false);
            } else if (el == "attribute") {
                if (cur_dim == npos)
                    return fail(reader.make_error("<attribute> outside <dimension>"));
                const std::string* name = reader.attr("name");
                const std::string* value = reader.attr("value");
                if (!name || !value)
                    return fail(reader.make_error("<attribute> needs @name and @value"));
                std::size_t a = schema.attr_index(cur_dim, *name);
                if (a == npos)
                    return fail(reader.make_error("attribute '" + *name +
                                                  "' is not declared for this dimension"));
                if (attr_seen[a]) return fail(reader.make_error("duplicate attribute '" + *name + "'"));
                attr_seen[a] = true;
                member.attr_values[a] = *value;
            } else {
                return fail(reader.make_error("unexpected element <" + el + ">"));
            }
        } else {
            if (reader.name() == "dimension" && cur_dim != npos) {
                for (std::size_t a = 0; a < attr_seen.size(); ++a)
                    if (!attr_seen[a])
                        return fail(reader.make_error(
                            "node '" + member.id + "' is missing attribute '" +
                            schema.attribute_names[cur_dim][a] + "'"));
                // Pool the member row; identical ids must carry identical
                // attributes (the migration is lossless).
                auto [it, inserted] = lookup[cur_dim].emplace(
                    member.id, static_cast<std::uint32_t>(idx.members[cur_dim].size()));
                if (inserted) {
                    idx.members[cur_dim].push_back(member);
                } else if (idx.members[cur_dim][it->second].attr_values != member.attr_values) {
                    return fail(reader.make_error("node '" + member.id +
                                                  "' repeats with different attributes"));
                }
                cell.member_ref[cur_dim] = it->second;
                cur_dim = npos;
            } else if (reader.name() == "Cell" && in_cell) {
                for (std::size_t d = 0; d < n_dims; ++d)
                    if (!dim_seen[d])
                        return fail(reader.make_error(
                            "cell " + std::to_string(idx.cells.size()) +
                            " is missing dimension '" + schema.dimension_names[d] + "'"));
                for (std::size_t m = 0; m < n_measures; ++m)
                    if (!meas_seen[m])
                        return fail(reader.make_error(
                            "cell " + std::to_string(idx.cells.size()) + " is missing measure '" +
                            schema.measure_names[m] + "'"));
                idx.cells.push_back(std::move(cell));
                cell = {};
                in_cell = false;
            }
        }
    }
    if (reader.error()) {
        out.diags.push_back(*reader.error());
        return out;
    }
    out.value = std::move(idx);
    return out;
}

Parsed<JoinIndex> parse_index(std::string_view bytes, const WarehouseSchema& schema) {
    MemoryXmlSource src(bytes);
    return parse_index(src, schema);
}

IndexQuery rewrite_for_index(const Query& q) {
    IndexQuery iq;
    iq.predicate = q.selections;  // each carries its resolved (dim, attr)
    iq.group_by = q.group_by;
    iq.group_refs = q.group_refs;
    iq.aggregations = q.aggregations;
    return iq;
}

CostParams CostParams::from(const Warehouse& w) {
    CostParams p;
    p.cell_count = w.facts.size();
    p.dimension_count = w.schema.dimension_names.size();
    for (std::size_t d = 0; d < p.dimension_count; ++d) {
        p.node_counts.push_back(w.dimensions.members[d].size());
        p.attr_counts.push_back(w.schema.attribute_names[d].size());
    }
    return p;
}

double cost_no_index(const CostParams& p) {
    double traversal = static_cast<double>(p.dimension_count);
    for (std::size_t i = 0; i < p.node_counts.size(); ++i)
        traversal += static_cast<double>(p.node_counts[i]) * static_cast<double>(p.attr_counts[i]);
    return static_cast<double>(p.cell_count) * static_cast<double>(p.dimension_count) * traversal;
}

double cost_index(const CostParams& p) {
    double per_cell = static_cast<double>(p.dimension_count);
    for (std::uint64_t a : p.attr_counts) per_cell += static_cast<double>(a);
    return static_cast<double>(p.cell_count) * per_cell;
}

std::vector<CostCurveRow> cost_curve(const CostParams& p,
                                     const std::vector<std::uint64_t>& cell_counts) {
    std::vector<CostCurveRow> rows;
    rows.reserve(cell_counts.size());
    for (std::uint64_t cells : cell_counts) {
        CostParams at = p;
        at.cell_count = cells;
        CostCurveRow row;
        row.cells = cells;
        row.no_index = cost_no_index(at);
        row.index = cost_index(at);
        row.ratio = row.index > 0 ? row.no_index / row.index : 0.0;
        rows.push_back(row);
    }
    return rows;
}

std::string cost_curve_csv(const std::vector<CostCurveRow>& rows) {
    std::string csv = "cells,cost_no_index,cost_index,ratio\n";
    for (const auto& r : rows) {
        csv += std::to_string(r.cells);
        csv += ',';
        csv += fmt_double(r.no_index);
        csv += ',';
        csv += fmt_double(r.index);
        csv += ',';
        csv += fmt_double(r.ratio);
        csv += '\n';
    }
    return csv;
}

}  // namespace xcube

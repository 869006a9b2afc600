#include "xcube/datagen.hpp"

#include <array>
#include <cmath>
#include <cstring>

namespace xcube {

namespace {

struct DimensionNaming {
    const char* dimension;
    const char* prefix;
    std::array<const char*, 5> attrs;
};

// Attribute vocabularies for the default star schema; custom dimensions fall
// back to generic names derived from the dimension name.
constexpr DimensionNaming kNamings[] = {
    {"customers", "cust", {"name", "city", "zip code", "state", "gender"}},
    {"products", "prod", {"name", "category", "subcategory", "status", "price band"}},
    {"times", "time", {"day", "month", "quarter", "year", "week"}},
    {"promotions", "promo", {"name", "category", "subcategory", "begin", "end"}},
    {"channels", "channel", {"desc", "class", "type", "region", "rank"}},
};

const DimensionNaming* naming_for(const std::string& dimension) {
    for (const auto& n : kNamings)
        if (dimension == n.dimension) return &n;
    return nullptr;
}

std::string attr_stem(const std::string& attr_name) {
    std::string stem = attr_name;
    for (char& c : stem)
        if (c == ' ') c = '_';
    return stem;
}

}  // namespace

WarehouseSchema profile_schema(const ScaleProfile& profile) {
    WarehouseSchema schema;
    for (const auto& [dim, base] : profile.base_dimensions) {
        (void)base;
        schema.dimension_names.push_back(dim);
        std::vector<std::string> attrs;
        const DimensionNaming* naming = naming_for(dim);
        for (std::size_t a = 0; a < profile.attrs_per_dimension; ++a) {
            std::string name;
            if (naming && a < naming->attrs.size()) {
                name = std::string(naming->prefix) + " " + naming->attrs[a];
            } else if (naming) {
                name = std::string(naming->prefix) + " extra " + std::to_string(a + 1);
            } else {
                name = dim + " attr " + std::to_string(a + 1);
            }
            attrs.push_back(std::move(name));
        }
        schema.attribute_names.push_back(std::move(attrs));
    }
    schema.measure_names = profile.measures;
    return schema;
}

std::uint64_t attribute_domain_size(std::uint64_t member_count) {
    std::uint64_t root = static_cast<std::uint64_t>(std::ceil(std::sqrt(
        static_cast<double>(member_count))));
    while (root * root < member_count) ++root;  // guard FP sqrt underestimates
    while (root > 1 && (root - 1) * (root - 1) >= member_count) --root;
    return root < 2 ? 2 : root;
}

Warehouse generate(const ScaleProfile& profile) {
    if (profile.scale.num == 0) throw UsageError("scale must be positive");

    const std::size_t n_dims = profile.base_dimensions.size();
    const std::uint64_t n_cells = profile.scaled_cells();

    // Rough in-memory footprint: strings dominate. ~48 bytes per stored
    // string (SSO object + slack), measured against the configured budget.
    std::uint64_t member_strings = 0;
    for (std::size_t d = 0; d < n_dims; ++d)
        member_strings += profile.scaled_members(d) * (profile.attrs_per_dimension + 1);
    std::uint64_t cell_bytes =
        n_cells * (n_dims * 48 + profile.measures.size() * 8 + 64);
    std::uint64_t estimate = member_strings * 48 + cell_bytes;
    if (estimate > profile.memory_budget_bytes) {
        throw DataError("generation needs an estimated " + std::to_string(estimate) +
                        " bytes but the memory budget is " +
                        std::to_string(profile.memory_budget_bytes) +
                        " bytes; raise --mem-budget-mb to at least " +
                        std::to_string(estimate / (1024 * 1024) + 1) + " MiB");
    }

    Warehouse w;
    w.schema = profile_schema(profile);

    SplitMix64 rng(profile.seed ^ 0x9E3779B97F4A7C15ULL);

    // Dimension members: attribute values drawn from per-attribute
    // categorical domains sized max(2, ceil(sqrt(member_count))).
    w.dimensions.members.resize(n_dims);
    const DimensionNaming* namings[16] = {};
    for (std::size_t d = 0; d < n_dims && d < 16; ++d)
        namings[d] = naming_for(profile.base_dimensions[d].first);

    for (std::size_t d = 0; d < n_dims; ++d) {
        const std::uint64_t count = profile.scaled_members(d);
        const std::uint64_t domain = attribute_domain_size(count);
        const std::string prefix =
            d < 16 && namings[d] ? namings[d]->prefix : profile.base_dimensions[d].first;

        std::vector<std::string> stems;
        for (const auto& attr : w.schema.attribute_names[d]) stems.push_back(attr_stem(attr));

        auto& members = w.dimensions.members[d];
        members.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            DimensionMember m;
            m.id = prefix + std::to_string(i + 1);
            m.attr_values.reserve(stems.size());
            for (const auto& stem : stems)
                m.attr_values.push_back(stem + "_" + std::to_string(rng.bounded(domain) + 1));
            members.push_back(std::move(m));
        }
    }

    // Facts: each dimension reference uniform over that dimension's members,
    // measures uniform integers in [1, 1000].
    w.facts.reserve(n_cells);
    for (std::uint64_t i = 0; i < n_cells; ++i) {
        FactCell cell;
        cell.dim_refs.reserve(n_dims);
        for (std::size_t d = 0; d < n_dims; ++d) {
            const auto& members = w.dimensions.members[d];
            cell.dim_refs.push_back(members[rng.bounded(members.size())].id);
        }
        cell.measures.reserve(profile.measures.size());
        for (std::size_t m = 0; m < profile.measures.size(); ++m)
            cell.measures.push_back(static_cast<double>(rng.bounded(1000) + 1));
        w.facts.push_back(std::move(cell));
    }
    return w;
}

}  // namespace xcube

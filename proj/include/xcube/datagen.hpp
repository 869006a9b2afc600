#pragma once

// Seeded synthetic warehouse generator targeting the sales star-schema
// profile (16,260,336 cells; customers/products/times/promotions/channels)
// at a configurable scale factor. Pure function of (profile, seed): the
// same inputs always produce byte-identical documents.

#include <cstdint>
#include <string>
#include <vector>

#include "xcube/model.hpp"
#include "xcube/util.hpp"

namespace xcube {

struct ScaleProfile {
    std::uint64_t base_cells = 16'260'336;
    std::vector<std::pair<std::string, std::uint64_t>> base_dimensions = {
        {"customers", 50'000}, {"products", 10'000}, {"times", 1'461},
        {"promotions", 501},   {"channels", 5},
    };
    Rational scale{1, 1};
    std::uint64_t seed = 0;
    std::size_t attrs_per_dimension = 5;
    std::vector<std::string> measures = {"amount", "quantity"};
    std::uint64_t memory_budget_bytes = 2ULL << 30;

    std::uint64_t scaled_cells() const { return scaled_count(base_cells, scale); }
    std::uint64_t scaled_members(std::size_t dim) const {
        return scaled_count(base_dimensions[dim].second, scale);
    }
};

// Schema implied by the profile (dimension/attribute/measure names).
WarehouseSchema profile_schema(const ScaleProfile& profile);

// Categorical domain size for an attribute of a dimension with n members:
// max(2, ceil(sqrt(n))), so selection predicates keep nontrivial selectivity
// at every scale.
std::uint64_t attribute_domain_size(std::uint64_t member_count);

// Throws DataError when the estimated in-memory size exceeds the profile's
// budget; the message names the required budget.
Warehouse generate(const ScaleProfile& profile);

}  // namespace xcube

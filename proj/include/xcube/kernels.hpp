#pragma once

// Data-parallel kernels for the columnar index scan: predicate bitmask
// construction over dictionary codes, mask combination, and masked measure
// reductions. Scalar reference implementations are the semantics; the AVX2
// variants are selected at runtime and must match the scalar results
// (exactly for integer-valued inputs, to 1 ulp-scale tolerance otherwise --
// see the equivalence tests).

#include <cstddef>
#include <cstdint>

namespace xcube::simd {

// Bitmask layout: bit i of word i/64 corresponds to element i. Bits at
// positions >= n in the last word are always zero.
inline std::size_t mask_words(std::size_t n) {
    return (n + 63) / 64;
}

struct KernelTable {
    const char* name;
    // out[w] bits set where codes[i] == target.
    void (*eq_mask_u32)(const std::uint32_t* codes, std::size_t n, std::uint32_t target,
                        std::uint64_t* out);
    void (*mask_and)(std::uint64_t* acc, const std::uint64_t* other, std::size_t words);
    std::uint64_t (*mask_popcount)(const std::uint64_t* mask, std::size_t words);
    // Reductions over values[i] where the mask bit is set. Empty selections
    // return 0 / +inf / -inf respectively.
    double (*masked_sum)(const double* values, const std::uint64_t* mask, std::size_t n);
    double (*masked_min)(const double* values, const std::uint64_t* mask, std::size_t n);
    double (*masked_max)(const double* values, const std::uint64_t* mask, std::size_t n);
};

const KernelTable& scalar_kernels();

// AVX2 table; identical to scalar_kernels() when the build or the CPU
// cannot do AVX2.
const KernelTable& avx2_kernels();
bool avx2_supported();

// Startup choice: AVX2 when supported, overridable with XCUBE_OPT_SIMD=scalar.
const KernelTable& active_kernels();
void set_active_kernels(const KernelTable& table);

void fill_all_ones(std::uint64_t* mask, std::size_t n);  // respects tail bits

}  // namespace xcube::simd

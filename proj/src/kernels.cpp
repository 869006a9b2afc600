#include "xcube/kernels.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <cstring>
#include <limits>

namespace xcube::simd {

namespace {

void eq_mask_u32_scalar(const std::uint32_t* codes, std::size_t n, std::uint32_t target,
                        std::uint64_t* out) {
    std::size_t words = mask_words(n);
    std::memset(out, 0, words * sizeof(std::uint64_t));
    for (std::size_t i = 0; i < n; ++i)
        if (codes[i] == target) out[i / 64] |= 1ULL << (i % 64);
}

void mask_and_scalar(std::uint64_t* acc, const std::uint64_t* other, std::size_t words) {
    for (std::size_t w = 0; w < words; ++w) acc[w] &= other[w];
}

std::uint64_t mask_popcount_scalar(const std::uint64_t* mask, std::size_t words) {
    std::uint64_t total = 0;
    for (std::size_t w = 0; w < words; ++w) total += static_cast<std::uint64_t>(std::popcount(mask[w]));
    return total;
}

double masked_sum_scalar(const double* values, const std::uint64_t* mask, std::size_t n) {
    double acc = 0.0;
    std::size_t words = mask_words(n);
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = mask[w];
        while (bits) {
            unsigned bit = static_cast<unsigned>(std::countr_zero(bits));
            acc += values[w * 64 + bit];
            bits &= bits - 1;
        }
    }
    return acc;
}

double masked_min_scalar(const double* values, const std::uint64_t* mask, std::size_t n) {
    double acc = std::numeric_limits<double>::infinity();
    std::size_t words = mask_words(n);
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = mask[w];
        while (bits) {
            unsigned bit = static_cast<unsigned>(std::countr_zero(bits));
            double v = values[w * 64 + bit];
            if (v < acc) acc = v;
            bits &= bits - 1;
        }
    }
    return acc;
}

double masked_max_scalar(const double* values, const std::uint64_t* mask, std::size_t n) {
    double acc = -std::numeric_limits<double>::infinity();
    std::size_t words = mask_words(n);
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = mask[w];
        while (bits) {
            unsigned bit = static_cast<unsigned>(std::countr_zero(bits));
            double v = values[w * 64 + bit];
            if (v > acc) acc = v;
            bits &= bits - 1;
        }
    }
    return acc;
}

constexpr KernelTable kScalarTable = {
    "scalar",
    eq_mask_u32_scalar,
    mask_and_scalar,
    mask_popcount_scalar,
    masked_sum_scalar,
    masked_min_scalar,
    masked_max_scalar,
};

const KernelTable* pick_startup_table() {
    const char* env = std::getenv("XCUBE_OPT_SIMD");
    if (env && std::string_view(env) == "scalar") return &kScalarTable;
    if (avx2_supported()) return &avx2_kernels();
    return &kScalarTable;
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

const KernelTable& scalar_kernels() {
    return kScalarTable;
}

const KernelTable& active_kernels() {
    const KernelTable* table = g_active.load(std::memory_order_acquire);
    if (!table) {
        table = pick_startup_table();
        g_active.store(table, std::memory_order_release);
    }
    return *table;
}

void set_active_kernels(const KernelTable& table) {
    g_active.store(&table, std::memory_order_release);
}

void fill_all_ones(std::uint64_t* mask, std::size_t n) {
    std::size_t words = mask_words(n);
    if (words == 0) return;
    std::memset(mask, 0xFF, words * sizeof(std::uint64_t));
    std::size_t tail = n % 64;
    if (tail) mask[words - 1] = (1ULL << tail) - 1;
}

}  // namespace xcube::simd

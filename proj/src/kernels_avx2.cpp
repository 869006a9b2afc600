// AVX2 variants of the scan kernels. This translation unit is the only one
// compiled with -mavx2; avx2_supported() gates every call at runtime.

#include "xcube/kernels.hpp"

#include <bit>
#include <cstring>
#include <limits>

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#define XCUBE_X86 1
#else
#define XCUBE_X86 0
#endif

#if XCUBE_X86 && defined(__AVX2__)
#define XCUBE_HAVE_AVX2 1
#include <immintrin.h>
#else
#define XCUBE_HAVE_AVX2 0
#endif

namespace xcube::simd {

bool avx2_supported() {
#if XCUBE_HAVE_AVX2
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

#if XCUBE_HAVE_AVX2

namespace {

void eq_mask_u32_avx2(const std::uint32_t* codes, std::size_t n, std::uint32_t target,
                      std::uint64_t* out) {
    const __m256i needle = _mm256_set1_epi32(static_cast<int>(target));
    std::size_t full_words = n / 64;
    for (std::size_t w = 0; w < full_words; ++w) {
        std::uint64_t word = 0;
        const std::uint32_t* base = codes + w * 64;
        for (std::size_t g = 0; g < 8; ++g) {
            __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(base + g * 8));
            __m256i eq = _mm256_cmpeq_epi32(v, needle);
            unsigned bits = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
            word |= static_cast<std::uint64_t>(bits) << (g * 8);
        }
        out[w] = word;
    }
    // Tail word, bit by bit.
    std::size_t words = mask_words(n);
    if (words > full_words) {
        std::uint64_t word = 0;
        for (std::size_t i = full_words * 64; i < n; ++i)
            if (codes[i] == target) word |= 1ULL << (i % 64);
        out[full_words] = word;
    }
}

void mask_and_avx2(std::uint64_t* acc, const std::uint64_t* other, std::size_t words) {
    std::size_t w = 0;
    for (; w + 4 <= words; w += 4) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + w));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(other + w));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + w), _mm256_and_si256(a, b));
    }
    for (; w < words; ++w) acc[w] &= other[w];
}

std::uint64_t mask_popcount_avx2(const std::uint64_t* mask, std::size_t words) {
    std::uint64_t total = 0;
    for (std::size_t w = 0; w < words; ++w) total += static_cast<std::uint64_t>(std::popcount(mask[w]));
    return total;
}

// 16 expanded blend masks: entry b has lane j = all-ones iff bit j of b is set.
struct NibbleMasks {
    alignas(32) std::uint64_t lanes[16][4];
    constexpr NibbleMasks() : lanes() {
        for (int b = 0; b < 16; ++b)
            for (int j = 0; j < 4; ++j)
                lanes[b][j] = (b >> j) & 1 ? ~0ULL : 0ULL;
    }
};
constexpr NibbleMasks kNibbleMasks;

double masked_sum_avx2(const double* values, const std::uint64_t* mask, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t groups = n / 4;
    for (std::size_t g = 0; g < groups; ++g) {
        unsigned nibble = static_cast<unsigned>(mask[g / 16] >> ((g % 16) * 4)) & 0xF;
        if (!nibble) continue;
        __m256d v = _mm256_loadu_pd(values + g * 4);
        __m256d m = _mm256_load_pd(reinterpret_cast<const double*>(kNibbleMasks.lanes[nibble]));
        acc = _mm256_add_pd(acc, _mm256_and_pd(v, m));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (std::size_t i = groups * 4; i < n; ++i)
        if (mask[i / 64] >> (i % 64) & 1) total += values[i];
    return total;
}

double masked_min_avx2(const double* values, const std::uint64_t* mask, std::size_t n) {
    const __m256d identity = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d acc = identity;
    std::size_t groups = n / 4;
    for (std::size_t g = 0; g < groups; ++g) {
        unsigned nibble = static_cast<unsigned>(mask[g / 16] >> ((g % 16) * 4)) & 0xF;
        if (!nibble) continue;
        __m256d v = _mm256_loadu_pd(values + g * 4);
        __m256d m = _mm256_load_pd(reinterpret_cast<const double*>(kNibbleMasks.lanes[nibble]));
        acc = _mm256_min_pd(acc, _mm256_blendv_pd(identity, v, m));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double result = lanes[0];
    for (int i = 1; i < 4; ++i)
        if (lanes[i] < result) result = lanes[i];
    for (std::size_t i = groups * 4; i < n; ++i)
        if (mask[i / 64] >> (i % 64) & 1 && values[i] < result) result = values[i];
    return result;
}

double masked_max_avx2(const double* values, const std::uint64_t* mask, std::size_t n) {
    const __m256d identity = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    __m256d acc = identity;
    std::size_t groups = n / 4;
    for (std::size_t g = 0; g < groups; ++g) {
        unsigned nibble = static_cast<unsigned>(mask[g / 16] >> ((g % 16) * 4)) & 0xF;
        if (!nibble) continue;
        __m256d v = _mm256_loadu_pd(values + g * 4);
        __m256d m = _mm256_load_pd(reinterpret_cast<const double*>(kNibbleMasks.lanes[nibble]));
        acc = _mm256_max_pd(acc, _mm256_blendv_pd(identity, v, m));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double result = lanes[0];
    for (int i = 1; i < 4; ++i)
        if (lanes[i] > result) result = lanes[i];
    for (std::size_t i = groups * 4; i < n; ++i)
        if (mask[i / 64] >> (i % 64) & 1 && values[i] > result) result = values[i];
    return result;
}

constexpr KernelTable kAvx2Table = {
    "avx2",
    eq_mask_u32_avx2,
    mask_and_avx2,
    mask_popcount_avx2,
    masked_sum_avx2,
    masked_min_avx2,
    masked_max_avx2,
};

}  // namespace

const KernelTable& avx2_kernels() {
    return avx2_supported() ? kAvx2Table : scalar_kernels();
}

#else  // !XCUBE_HAVE_AVX2

const KernelTable& avx2_kernels() {
    return scalar_kernels();
}

#endif

}  // namespace xcube::simd

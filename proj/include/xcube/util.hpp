#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xcube/diag.hpp"

namespace xcube {

// Byte sink used by the serializers, so a document can be written to a
// string, a file, or straight into a hash without materializing it.
struct ByteSink {
    virtual ~ByteSink() = default;
    virtual void append(std::string_view bytes) = 0;
};

struct StringSink final : ByteSink {
    std::string out;
    void append(std::string_view bytes) override { out.append(bytes); }
};

// FNV-1a, 64-bit. Content tag for index/warehouse pairing, not crypto.
struct Fnv64 {
    std::uint64_t state = 1469598103934665603ULL;

    void update(std::string_view bytes) {
        for (unsigned char c : bytes) {
            state ^= c;
            state *= 1099511628211ULL;
        }
    }
};

struct FnvSink final : ByteSink {
    Fnv64 hash;
    void append(std::string_view bytes) override { hash.update(bytes); }
};

// Exact nonnegative rational, used for scale factors so that scaled counts
// never suffer binary floating-point rounding (0.001 * 50000 must be 50).
struct Rational {
    std::uint64_t num = 1;
    std::uint64_t den = 1;

    // Accepts decimal and scientific literals: "1", "0.001", "1e-4", "2.5e-3".
    static std::optional<Rational> parse(std::string_view text);

    double as_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// max(1, ceil(base * scale)) with exact rational arithmetic.
std::uint64_t scaled_count(std::uint64_t base, const Rational& scale);

// SplitMix64. Fixed algorithm so generated data is identical across
// platforms and standard-library versions.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). Lemire's multiply-shift with rejection.
    std::uint64_t bounded(std::uint64_t bound);

    // Uniform in [0, 1).
    double unit();
};

// Shortest decimal representation that round-trips through from_chars.
std::string fmt_double(double v);
std::optional<double> parse_double(std::string_view text);

std::string csv_escape(std::string_view field);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string to_hex(std::uint64_t v);
std::optional<std::uint64_t> from_hex(std::string_view text);

std::string read_file(const std::string& path);            // throws DataError
void write_file(const std::string& path, std::string_view bytes);  // throws DataError

}  // namespace xcube

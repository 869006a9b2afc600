#include "xcube/util.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace xcube {

std::string Diagnostic::str() const {
    std::string s;
    if (line > 0) {
        s += std::to_string(line);
        s += ':';
        s += std::to_string(col);
        s += ": ";
    }
    s += message;
    if (!where.empty()) {
        s += " (at ";
        s += where;
        s += ')';
    }
    return s;
}

std::string format_diagnostics(const std::vector<Diagnostic>& diags) {
    std::string s;
    for (const auto& d : diags) {
        if (!s.empty()) s += '\n';
        s += d.str();
    }
    return s;
}

std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    std::uint64_t mantissa = 0;
    int frac_digits = 0;
    int exponent = 0;
    bool any_digit = false;

    auto push_digit = [&](char c) -> bool {
        if (mantissa > (UINT64_MAX - 9) / 10) return false;  // overflow
        mantissa = mantissa * 10 + static_cast<std::uint64_t>(c - '0');
        any_digit = true;
        return true;
    };

    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i)
        if (!push_digit(text[i])) return std::nullopt;
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
            if (!push_digit(text[i])) return std::nullopt;
            ++frac_digits;
        }
    }
    if (!any_digit) return std::nullopt;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            neg = text[i] == '-';
            ++i;
        }
        if (i == text.size()) return std::nullopt;
        int e = 0;
        for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
            e = e * 10 + (text[i] - '0');
            if (e > 18) return std::nullopt;
        }
        exponent = neg ? -e : e;
    }
    if (i != text.size()) return std::nullopt;

    exponent -= frac_digits;
    Rational r{mantissa, 1};
    while (exponent > 0) {
        if (r.num > UINT64_MAX / 10) return std::nullopt;
        r.num *= 10;
        --exponent;
    }
    while (exponent < 0) {
        if (r.den > UINT64_MAX / 10) return std::nullopt;
        r.den *= 10;
        ++exponent;
    }
    return r;
}

std::uint64_t scaled_count(std::uint64_t base, const Rational& scale) {
    // ceil(base * num / den), guarding the multiply with 128-bit arithmetic.
    unsigned __int128 prod = static_cast<unsigned __int128>(base) * scale.num;
    unsigned __int128 q = (prod + scale.den - 1) / scale.den;
    std::uint64_t n = q > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(q);
    return n < 1 ? 1 : n;
}

std::uint64_t SplitMix64::bounded(std::uint64_t bound) {
    if (bound == 0) return 0;
    // Lemire: multiply-shift, rejecting the biased low region.
    std::uint64_t x = next();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    std::uint64_t lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        while (lo < threshold) {
            x = next();
            m = static_cast<unsigned __int128>(x) * bound;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double SplitMix64::unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::optional<double> parse_double(std::string_view text) {
    double v = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return v;
}

std::string csv_escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string to_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::optional<std::uint64_t> from_hex(std::string_view text) {
    if (text.empty() || text.size() > 16) return std::nullopt;
    std::uint64_t v = 0;
    for (char c : text) {
        v <<= 4;
        if (c >= '0' && c <= '9') v |= static_cast<std::uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint64_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v |= static_cast<std::uint64_t>(c - 'A' + 10);
        else return std::nullopt;
    }
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw DataError("read failed: " + path);
    return std::move(ss).str();
}

void write_file(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open file for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace xcube

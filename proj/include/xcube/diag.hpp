#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace xcube {

// A parse- or bind-time problem. Never thrown; collected and returned so
// callers can report several problems at once.
struct Diagnostic {
    std::string message;
    std::size_t line = 0;  // 1-based, 0 = not applicable
    std::size_t col = 0;
    std::string where;     // element path or token text, may be empty

    std::string str() const;
};

std::string format_diagnostics(const std::vector<Diagnostic>& diags);

// Result of a fallible parse: either a value or one or more diagnostics.
template <typename T>
struct Parsed {
    std::optional<T> value;
    std::vector<Diagnostic> diags;

    bool ok() const { return value.has_value(); }
    explicit operator bool() const { return ok(); }
    T& operator*() { return *value; }
    const T& operator*() const { return *value; }
    T* operator->() { return &*value; }
    const T* operator->() const { return &*value; }

    static Parsed failure(Diagnostic d) {
        Parsed p;
        p.diags.push_back(std::move(d));
        return p;
    }
};

// Bad input data or files (CLI exit code 2).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad command-line usage (CLI exit code 1).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace xcube

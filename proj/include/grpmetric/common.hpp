#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace grpmetric {

/// Encoded group element / point of a finite carrier.
using Element = std::uint32_t;

inline constexpr Element npos = std::numeric_limits<Element>::max();

/// Hard bound on dense tables (Cayley tables and distance matrices).
inline constexpr std::size_t default_max_carrier = 4096;

/// Effective table bound. GRPMETRIC_MAX_CARRIER may lower it, never raise it.
inline std::size_t max_carrier() {
    const char* env = std::getenv("GRPMETRIC_MAX_CARRIER");
    if (env == nullptr || *env == '\0') return default_max_carrier;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) return default_max_carrier;
    return static_cast<std::size_t>(std::min<unsigned long long>(v, default_max_carrier));
}

inline void require_carrier(std::size_t size, const std::string& what) {
    if (size > max_carrier()) {
        throw std::length_error(what + ": carrier of size " + std::to_string(size) +
                                " exceeds the table bound " + std::to_string(max_carrier()));
    }
}

/// base^exp, throwing std::overflow_error instead of wrapping.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
            throw std::overflow_error("integer power overflows 64 bits");
        }
        result *= base;
    }
    return result;
}

/// Carrier size base^exp, or max() when it does not fit; never throws.
inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
    try {
        return checked_pow(base, exp);
    } catch (const std::overflow_error&) {
        return std::numeric_limits<std::uint64_t>::max();
    }
}

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

/// If value == base^k for some k >= 0, returns k; otherwise -1.
inline int exact_log(std::uint64_t value, std::uint64_t base) {
    if (base < 2 || value == 0) return -1;
    int k = 0;
    while (value % base == 0) {
        value /= base;
        ++k;
    }
    return value == 1 ? k : -1;
}

inline std::string join_numbers(const auto& values, const char* sep = ",") {
    std::string out;
    bool first = true;
    for (const auto& v : values) {
        if (!first) out += sep;
        out += std::to_string(v);
        first = false;
    }
    return out;
}

}  // namespace grpmetric

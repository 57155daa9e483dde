#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tribell {

/// Exact value of the form n/2. Classical bounds and inequality coefficients
/// are integers or half-integers, so everything on the hidden-variable side is
/// carried as twice its value in a 64-bit integer.
struct half_int {
    long long twice = 0;

    static half_int from_int(long long v) { return half_int{2 * v}; }

    bool is_integer() const { return twice % 2 == 0; }
    double value() const { return static_cast<double>(twice) / 2.0; }

    std::string str() const {
        if (is_integer()) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }

    friend bool operator==(half_int a, half_int b) { return a.twice == b.twice; }
    friend bool operator!=(half_int a, half_int b) { return a.twice != b.twice; }
    friend bool operator<(half_int a, half_int b) { return a.twice < b.twice; }
    friend bool operator<=(half_int a, half_int b) { return a.twice <= b.twice; }
    friend bool operator>(half_int a, half_int b) { return a.twice > b.twice; }
    friend bool operator>=(half_int a, half_int b) { return a.twice >= b.twice; }
};

namespace detail {

// Narrowing check used by the exact elimination code; anything this large
// means the fraction-free pivoting ran away and the result cannot be trusted.
inline long long narrow128(__int128 v) {
    constexpr __int128 lim = static_cast<__int128>(1) << 62;
    if (v >= lim || v <= -lim)
        throw std::overflow_error("exact integer elimination overflow");
    return static_cast<long long>(v);
}

inline long long gcd_ll(long long a, long long b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

}  // namespace detail

}  // namespace tribell

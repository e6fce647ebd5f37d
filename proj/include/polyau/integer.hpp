#pragma once

// Exact integer helpers shared by every module: 128-bit checked arithmetic,
// integer square roots, gcd and decimal formatting for __int128.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace polyau {

using i128 = __int128;

namespace checked {

inline i128 add(i128 a, i128 b)
{
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("polyau: integer overflow in addition");
    }
    return r;
}

inline i128 sub(i128 a, i128 b)
{
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) {
        throw std::overflow_error("polyau: integer overflow in subtraction");
    }
    return r;
}

inline i128 mul(i128 a, i128 b)
{
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("polyau: integer overflow in multiplication");
    }
    return r;
}

inline std::int64_t add64(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("polyau: 64-bit overflow in addition");
    }
    return r;
}

inline std::int64_t mul64(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("polyau: 64-bit overflow in multiplication");
    }
    return r;
}

/// Narrows to int64, throwing instead of truncating.
inline std::int64_t narrow(i128 v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("polyau: value does not fit in 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

} // namespace checked

inline i128 abs128(i128 v)
{
    return v < 0 ? -v : v;
}

inline i128 gcd128(i128 a, i128 b)
{
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Least non-negative residue of v modulo m (m > 0).
inline std::int64_t mod_floor(i128 v, std::int64_t m)
{
    i128 r = v % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
}

/// floor(sqrt(n)) for n >= 0.
inline std::int64_t isqrt(i128 n)
{
    if (n < 0) throw std::domain_error("polyau: isqrt of a negative number");
    if (n == 0) return 0;
    auto r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return checked::narrow(r);
}

/// Returns true and stores the root when n is a perfect square.
inline bool exact_sqrt(i128 n, std::int64_t& root)
{
    if (n < 0) return false;
    root = isqrt(n);
    return static_cast<i128>(root) * root == n;
}

/// Integer power with overflow detection.
inline std::int64_t ipow(std::int64_t base, int exp)
{
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r = checked::mul64(r, base);
    return r;
}

inline std::string to_string(i128 v)
{
    if (v == 0) return "0";
    bool neg = v < 0;
    std::string s;
    // Work with negative values so the minimum is representable.
    if (!neg) v = -v;
    while (v != 0) {
        int digit = -static_cast<int>(v % 10);
        s.push_back(static_cast<char>('0' + digit));
        v /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

} // namespace polyau

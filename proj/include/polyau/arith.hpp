#pragma once

// Number-theoretic primitives: Kronecker/Legendre symbols, the Hilbert symbol
// at odd primes, factorization, square parts, squarefree divisors and
// solvability of t r^2 = rhs (mod M).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polyau/integer.hpp"

namespace polyau {

struct PrimePower {
    std::int64_t prime;
    int exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with strictly increasing primes.
using Factorization = std::vector<PrimePower>;

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1U;
    }
    return r;
}

// Jacobi symbol (a/n) for odd n > 0.
inline int jacobi(i128 a, i128 n)
{
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i128 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b)
{
    while (b != 0) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace detail

/// Kronecker symbol (a/n), n != 0.
inline int kronecker(std::int64_t a_in, std::int64_t n_in)
{
    if (n_in == 0) throw std::invalid_argument("polyau: kronecker symbol requires n != 0");
    i128 a = a_in;
    i128 n = n_in;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos > 0) {
        if (a % 2 == 0) return 0;
        i128 r = a % 8;
        if (r < 0) r += 8;
        if ((r == 3 || r == 5) && (twos % 2 == 1)) result = -result;
    }
    if (n == 1) return result;
    return result * detail::jacobi(a, n);
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(std::int64_t n_in)
{
    if (n_in < 2) return false;
    auto n = static_cast<std::uint64_t>(n_in);
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

// Brent's variant of Pollard rho; n is an odd composite.
inline std::uint64_t pollard_factor(std::uint64_t n)
{
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        constexpr std::uint64_t block = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(block, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
                k += block;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void split_cofactor(std::uint64_t n, std::vector<std::uint64_t>& primes)
{
    if (n == 1) return;
    if (is_prime(static_cast<std::int64_t>(n))) {
        primes.push_back(n);
        return;
    }
    std::uint64_t d = pollard_factor(n);
    split_cofactor(d, primes);
    split_cofactor(n / d, primes);
}

} // namespace detail

/// Trial division up to 10^7, then Miller-Rabin / Pollard rho on the cofactor.
inline Factorization factorize(std::int64_t n_in)
{
    if (n_in < 1) throw std::invalid_argument("polyau: factorize requires n >= 1");
    auto n = static_cast<std::uint64_t>(n_in);
    Factorization out;
    auto take = [&](std::uint64_t p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.push_back({static_cast<std::int64_t>(p), e});
    };
    take(2);
    constexpr std::uint64_t trial_limit = 10'000'000;
    for (std::uint64_t d = 3; d <= trial_limit && d * d <= n; d += 2) take(d);
    if (n > 1) {
        std::vector<std::uint64_t> rest;
        detail::split_cofactor(n, rest);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            out.push_back({static_cast<std::int64_t>(rest[i]), static_cast<int>(j - i)});
            i = j;
        }
    }
    return out;
}

/// p-adic valuation of a nonzero integer.
inline int valuation(i128 n, std::int64_t p)
{
    if (n == 0) throw std::invalid_argument("polyau: valuation of zero");
    if (p < 2) throw std::invalid_argument("polyau: valuation requires p >= 2");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// Hilbert symbol (a,b)_p for odd primes p via
/// (-1)^{alpha beta (p-1)/2} (u/p)^beta (v/p)^alpha with a = p^alpha u, b = p^beta v.
inline int hilbert_odd(i128 a, i128 b, std::int64_t p)
{
    if (p < 3 || p % 2 == 0 || !is_prime(p)) {
        throw std::invalid_argument("polyau: hilbert_odd requires an odd prime");
    }
    if (a == 0 || b == 0) throw std::invalid_argument("polyau: hilbert_odd requires nonzero arguments");
    int alpha = valuation(a, p);
    int beta = valuation(b, p);
    i128 u = a;
    i128 v = b;
    for (int i = 0; i < alpha; ++i) u /= p;
    for (int i = 0; i < beta; ++i) v /= p;
    int result = 1;
    if ((static_cast<std::int64_t>(alpha) * beta % 2 == 1) && ((p - 1) / 2) % 2 == 1) result = -result;
    if (beta % 2 == 1) result *= kronecker(mod_floor(u, p), p);
    if (alpha % 2 == 1) result *= kronecker(mod_floor(v, p), p);
    return result;
}

struct SquarePart {
    std::int64_t square;   ///< largest perfect square dividing n
    std::int64_t cofactor; ///< n / square, squarefree
};

inline SquarePart square_part(std::int64_t n)
{
    if (n < 1) throw std::invalid_argument("polyau: square_part requires n >= 1");
    std::int64_t s = 1;
    for (const auto& [p, e] : factorize(n)) s *= ipow(p, e - e % 2);
    return {s, n / s};
}

/// All squarefree positive divisors of n, ascending.
inline std::vector<std::int64_t> squarefree_divisors(std::int64_t n)
{
    if (n < 1) throw std::invalid_argument("polyau: squarefree_divisors requires n >= 1");
    std::vector<std::int64_t> divs{1};
    for (const auto& pp : factorize(n)) {
        const std::size_t count = divs.size();
        for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pp.prime);
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

/// Least r in [0, M) with t r^2 = rhs (mod M), or nullopt.
inline std::optional<std::int64_t> solvable_quadratic_congruence(std::int64_t t, i128 rhs, std::int64_t modulus)
{
    if (modulus < 1) throw std::invalid_argument("polyau: congruence modulus must be positive");
    if (t < 1) throw std::invalid_argument("polyau: congruence coefficient t must be positive");
    const i128 target = mod_floor(rhs, modulus);
    const i128 tm = t % modulus;
    for (std::int64_t r = 0; r < modulus; ++r) {
        i128 sq = static_cast<i128>(r) * r % modulus;
        if (tm * sq % modulus == target) return r;
    }
    return std::nullopt;
}

} // namespace polyau

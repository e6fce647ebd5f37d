#pragma once

// Non-represented integers for P_{1,1,3,30r+17}: every prime l = 1, 19 (mod 30)
// with 8(30r+15) n + 5(30r+13)^2 = 5 l^2 for integral n >= 0 gives an n the
// form misses. The supporting coefficient identities are checked through exact
// counts: the genus coefficient at 5 l^2 is (rest count)/576 = l/36, and the
// unary theta term sum_{n = 1 (6)} n q^{5 n^2} cancels it.

#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyau/arith.hpp"
#include "polyau/classnum.hpp"
#include "polyau/forms.hpp"
#include "polyau/qseries.hpp"
#include "polyau/reps.hpp"

namespace polyau {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d)
    {
        if (d == 0) throw std::invalid_argument("polyau: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const Rational&, const Rational&) = default;
};

inline void require_witness_prime(std::int64_t ell)
{
    if (!jones_range(ell)) throw std::invalid_argument("polyau: expected a prime l = 1, 19 (mod 30)");
}

/// (rest of split_by_divisibility(<1,1,3>, 5 l^2, 5)) / 576.
inline Rational eisenstein_coefficient_5ell2(std::int64_t ell, std::int64_t budget = kDefaultBudget)
{
    require_witness_prime(ell);
    const std::int64_t target = checked::mul64(5, checked::mul64(ell, ell));
    return {split_by_divisibility(DiagonalForm(1, 1, 3), target, 5, budget).rest, 576};
}

/// sum_{n = 1 (mod 6)} n q^{5 n^2} on scale 1, built as the unary theta
/// sum_{r = 1 (mod 6)} r q^{r^2/6} evaluated at 30 tau.
inline QSeries theta_prime(std::int64_t bound)
{
    // unary_theta(h=1, t=30, N=90) lives on grid 180 with k = 30 r^2; after tau -> 30 tau
    // the exponent 5 r^2 sits at grid 900 r^2, so grid 180 bound 180 B covers exponent B.
    const std::int64_t grid_bound = checked::mul64(180, bound);
    const QSeries base = unary_theta(1, 30, 90, grid_bound / 30);
    return regrid(rescale(base, 30, grid_bound), 1);
}

/// E(5 l^2) - (coefficient of theta' at 5 l^2) / 36 == 0.
inline bool unary_cancellation_check(std::int64_t ell, std::int64_t budget = kDefaultBudget)
{
    require_witness_prime(ell);
    const Rational e = eisenstein_coefficient_5ell2(ell, budget);
    const std::int64_t target = checked::mul64(5, checked::mul64(ell, ell));
    const std::int64_t unary = theta_prime(target).coefficient(target);
    // e.num/e.den - unary/36 == 0
    return static_cast<i128>(e.num) * 36 == static_cast<i128>(unary) * e.den;
}

/// n with 8(30r+15) n + 5(30r+13)^2 = 5 l^2, when l is a prime = 1, 19 (mod 30) and n is a non-negative integer.
inline std::optional<std::int64_t> witness_excluded_n(std::int64_t r, std::int64_t ell)
{
    if (r < 0) throw std::invalid_argument("polyau: witness_excluded_n requires r >= 0");
    if (!jones_range(ell)) return std::nullopt;
    const i128 c = checked::add(checked::mul(30, r), 13);
    const i128 num = checked::sub(checked::mul(5, checked::mul(ell, ell)), checked::mul(5, checked::mul(c, c)));
    const i128 den = checked::mul(8, checked::add(checked::mul(30, r), 15));
    if (num < 0 || num % den != 0) return std::nullopt;
    return checked::narrow(num / den);
}

/// Whether some residue l mod lcm(30, 48r+24), coprime to it, satisfies l = 1, 19 (mod 30)
/// and l^2 = (30r+13)^2 (mod 48r+24); by Dirichlet such classes hold infinitely many primes.
inline bool family_solvability(std::int64_t r)
{
    if (r < 0) throw std::invalid_argument("polyau: family_solvability requires r >= 0");
    const std::int64_t m = checked::add64(checked::mul64(48, r), 24);
    const std::int64_t modulus = std::lcm(std::int64_t{30}, m);
    const std::int64_t c = mod_floor(checked::add64(checked::mul64(30, r), 13), m);
    const std::int64_t target = static_cast<std::int64_t>(static_cast<i128>(c) * c % m);
    for (std::int64_t l = 1; l < modulus; ++l) {
        if (l % 30 != 1 && l % 30 != 19) continue;
        if (std::gcd(l, modulus) != 1) continue;
        if (static_cast<i128>(l) * l % m == target) return true;
    }
    return false;
}

inline FormParams family_form(std::int64_t r)
{
    return {1, 1, 3, checked::add64(checked::mul64(30, r), 17)};
}

/// Brute-force sieve confirms that P_{1,1,3,30r+17} misses n.
inline bool verify_nonrepresentation(std::int64_t r, std::int64_t n, std::int64_t budget = kDefaultBudget)
{
    if (n < 0) return false;
    const auto ex = exception_set(family_form(r), n, budget);
    return !ex.empty() && ex.back() == n;
}

struct WitnessRecord {
    std::int64_t r;
    std::int64_t ell;
    std::int64_t n;
    bool verified;
    double timing_ms;
};

/// Primes l <= ell_max (l = 1, 19 mod 30) giving an integral n >= 0.
inline std::vector<std::int64_t> admissible_ells(std::int64_t r, std::int64_t ell_max)
{
    std::vector<std::int64_t> out;
    for (std::int64_t l = 7; l <= ell_max; ++l) {
        if (witness_excluded_n(r, l)) out.push_back(l);
    }
    return out;
}

inline std::optional<WitnessRecord> witness_record(std::int64_t r, std::int64_t ell, std::int64_t budget = kDefaultBudget)
{
    const auto start = std::chrono::steady_clock::now();
    const auto n = witness_excluded_n(r, ell);
    if (!n) return std::nullopt;
    const bool ok = verify_nonrepresentation(r, *n, budget);
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    return WitnessRecord{r, ell, *n, ok, elapsed.count()};
}

} // namespace polyau

#pragma once

// Local (p-adic) analysis of P_{a,b,c,m}.
//
// Obstructions at odd p follow the trichotomy on (m mod p, p | a,b,c, the
// Legendre condition (a/p) = (-b/p) when p^q || c with q odd); at p = 2 they
// are decided by 2-adic universality of a x^2 + b y^2 + c z^2 when 4 | m and
// by parity of gcd(a,b,c) otherwise. Every obstruction carries a concrete
// witness: the least residue class n0 (mod p^k), with k minimal, that no value
// of P hits.
//
// For unobstructed primes, classify_prime reports which of three escapes keeps
// p from spoiling Eisenstein lower bounds: Q' = <a,b,c> is isotropic, Q' has
// primitive zeros modulo every p^k, or ell_n has bounded p-divisibility.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyau/arith.hpp"
#include "polyau/detail/bitset.hpp"
#include "polyau/forms.hpp"
#include "polyau/integer.hpp"

namespace polyau {

/// Diagonal coefficients <a, b, c> of a ternary quadratic space.
using Diagonal = std::array<std::int64_t, 3>;

/// n = residue (mod modulus).
struct ResidueClass {
    std::int64_t residue;
    std::int64_t modulus;

    friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

enum class Isotropy { Isotropic, Anisotropic, NotApplicable };

enum class Escape { NotApplicable, Isotropic, PrimitiveSolutions, BoundedDivisibility };

struct PrimeEscape {
    Escape kind = Escape::NotApplicable;
    int bound_exponent = 0; ///< k with p^k never dividing ell_n (BoundedDivisibility only)

    friend bool operator==(const PrimeEscape&, const PrimeEscape&) = default;
};

struct LocalReport {
    std::int64_t prime = 0;
    std::optional<ResidueClass> obstruction; ///< empty means no obstruction at this prime
    Isotropy isotropy = Isotropy::NotApplicable;
    PrimeEscape escape;
    bool outside_trichotomy = false; ///< p divides exactly two weights; verdict came from a residue scan

    bool obstructed() const noexcept { return obstruction.has_value(); }
};

/// Largest modulus p^k a residue scan will touch.
inline constexpr std::int64_t kMaxLocalScanModulus = std::int64_t{1} << 18;

inline const char* to_string(Isotropy v)
{
    switch (v) {
    case Isotropy::Isotropic: return "isotropic";
    case Isotropy::Anisotropic: return "anisotropic";
    case Isotropy::NotApplicable: break;
    }
    return "n/a";
}

inline const char* to_string(Escape v)
{
    switch (v) {
    case Escape::Isotropic: return "isotropic";
    case Escape::PrimitiveSolutions: return "primitive-solutions";
    case Escape::BoundedDivisibility: return "bounded-divisibility";
    case Escape::NotApplicable: break;
    }
    return "n/a";
}

inline int hasse_symbol(const Diagonal& diag, std::int64_t p)
{
    const auto [a, b, c] = diag;
    if (a == 0 || b == 0 || c == 0) throw std::invalid_argument("polyau: hasse_symbol requires nonzero entries");
    return hilbert_odd(a, b, p) * hilbert_odd(a, c, p) * hilbert_odd(b, c, p);
}

/// Isotropy over Q_p (odd p): S_p V = (-1, -dV)_p.
inline bool is_isotropic(const Diagonal& diag, std::int64_t p)
{
    const i128 disc = checked::mul(checked::mul(diag[0], diag[1]), diag[2]);
    if (disc == 0) throw std::invalid_argument("polyau: is_isotropic requires nonzero entries");
    return hasse_symbol(diag, p) == hilbert_odd(-1, -disc, p);
}

/// A primitive zero of a x^2 + b y^2 + c z^2 modulo p^k, scanning the third
/// coordinate outermost. Requires p^k <= 2^15.
inline std::optional<std::array<std::int64_t, 3>> primitive_zero_mod(const Diagonal& diag, std::int64_t p, int k)
{
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("polyau: primitive_zero_mod requires a prime");
    if (k < 1) throw std::invalid_argument("polyau: primitive_zero_mod requires k >= 1");
    std::int64_t modulus = 1;
    for (int i = 0; i < k; ++i) {
        modulus *= p;
        if (modulus > (std::int64_t{1} << 15)) {
            throw std::length_error("polyau: primitive_zero_mod scan bound p^k <= 2^15 exceeded");
        }
    }
    const std::int64_t a = mod_floor(diag[0], modulus);
    const std::int64_t b = mod_floor(diag[1], modulus);
    const std::int64_t c = mod_floor(diag[2], modulus);

    // For each residue w: the first y with b y^2 = w, and the first such y prime to p.
    std::vector<std::int64_t> any_root(modulus, -1);
    std::vector<std::int64_t> unit_root(modulus, -1);
    for (std::int64_t y = 0; y < modulus; ++y) {
        const std::int64_t w = static_cast<std::int64_t>(static_cast<i128>(b) * y % modulus * y % modulus);
        if (any_root[w] < 0) any_root[w] = y;
        if (y % p != 0 && unit_root[w] < 0) unit_root[w] = y;
    }
    for (std::int64_t z = 0; z < modulus; ++z) {
        const i128 cz = static_cast<i128>(c) * z % modulus * z % modulus;
        for (std::int64_t x = 0; x < modulus; ++x) {
            const i128 partial = (cz + static_cast<i128>(a) * x % modulus * x) % modulus;
            const std::int64_t need = mod_floor(-partial, modulus);
            const bool xz_unit = (x % p != 0) || (z % p != 0);
            const std::int64_t y = xz_unit ? any_root[need] : unit_root[need];
            if (y >= 0) return std::array<std::int64_t, 3>{x, y, z};
        }
    }
    return std::nullopt;
}

/// 2-adic universality of <a,b,c>: every class s mod 32 with v_2(s) <= 1 has a
/// solution mod 32 in which some coordinate satisfies v_2(a_i) + v_2(x_i) <= 1,
/// which is exactly the condition for Hensel lifting from 2^5.
inline bool two_adic_universal(const Diagonal& diag)
{
    constexpr int mod = 32;
    int coeff_val[3];
    for (int i = 0; i < 3; ++i) {
        if (diag[i] == 0) return false;
        coeff_val[i] = valuation(diag[i], 2);
    }
    auto v2 = [](int x) { return x == 0 ? 99 : __builtin_ctz(static_cast<unsigned>(x)); };
    bool liftable[mod] = {};
    for (int x = 0; x < mod; ++x) {
        for (int y = 0; y < mod; ++y) {
            for (int z = 0; z < mod; ++z) {
                const int xs[3] = {x, y, z};
                bool ok = false;
                for (int i = 0; i < 3 && !ok; ++i) ok = coeff_val[i] + v2(xs[i]) <= 1;
                if (!ok) continue;
                i128 q = static_cast<i128>(diag[0]) * x * x + static_cast<i128>(diag[1]) * y * y +
                         static_cast<i128>(diag[2]) * z * z;
                liftable[mod_floor(q, mod)] = true;
            }
        }
    }
    for (int s = 0; s < mod; ++s) {
        if (v2(s) <= 1 && !liftable[s]) return false;
    }
    return true;
}

namespace detail {

// Least class n0 (mod p^k) missed by P, trying k = 1..max_k.
inline std::optional<ResidueClass> find_missed_class(const FormParams& form, std::int64_t p, int max_k)
{
    std::int64_t modulus = 1;
    for (int k = 1; k <= max_k; ++k) {
        modulus *= p;
        if (modulus > kMaxLocalScanModulus) {
            throw std::length_error("polyau: local residue scan exceeds modulus cap");
        }
        // p_m(x) mod p^k depends on x mod p^k for odd p and on x mod 2^(k+1) for p = 2.
        const std::int64_t period = p == 2 ? 2 * modulus : modulus;
        std::vector<char> seen(modulus, 0);
        std::vector<std::int64_t> values;
        for (std::int64_t x = 0; x < period; ++x) {
            const std::int64_t v = mod_floor(polygonal(form.m(), x), modulus);
            if (!seen[v]) {
                seen[v] = 1;
                values.push_back(v);
            }
        }
        const auto n = static_cast<std::size_t>(modulus);
        auto shifts = [&](std::int64_t w) {
            std::vector<char> mark(modulus, 0);
            std::vector<std::size_t> out;
            for (std::int64_t v : values) {
                const auto s = static_cast<std::size_t>(static_cast<i128>(w % modulus) * v % modulus);
                if (!mark[s]) {
                    mark[s] = 1;
                    out.push_back(s);
                }
            }
            return out;
        };
        BitSet first(n);
        for (std::size_t s : shifts(form.a())) first.set(s);
        BitSet second(n);
        for (std::size_t s : shifts(form.b())) second.or_rotated(first, s);
        BitSet third(n);
        for (std::size_t s : shifts(form.c())) third.or_rotated(second, s);
        for (std::size_t r = 0; r < n; ++r) {
            if (!third.test(r)) return ResidueClass{static_cast<std::int64_t>(r), modulus};
        }
    }
    return std::nullopt;
}

inline bool has_liftable_primitive_zero_2adic(const Diagonal& diag)
{
    constexpr int mod = 32;
    int coeff_val[3];
    for (int i = 0; i < 3; ++i) coeff_val[i] = valuation(diag[i], 2);
    auto v2 = [](int x) { return x == 0 ? 99 : __builtin_ctz(static_cast<unsigned>(x)); };
    for (int x = 0; x < mod; ++x) {
        for (int y = 0; y < mod; ++y) {
            for (int z = 0; z < mod; ++z) {
                if (x % 2 == 0 && y % 2 == 0 && z % 2 == 0) continue;
                const int xs[3] = {x, y, z};
                bool ok = false;
                for (int i = 0; i < 3 && !ok; ++i) ok = coeff_val[i] + v2(xs[i]) <= 1;
                if (!ok) continue;
                i128 q = static_cast<i128>(diag[0]) * x * x + static_cast<i128>(diag[1]) * y * y +
                         static_cast<i128>(diag[2]) * z * z;
                if (mod_floor(q, mod) == 0) return true;
            }
        }
    }
    return false;
}

// Least k with p^k dividing no ell_n. ell_n = A n + B is hit by p^k iff gcd(A, p^k) | B.
inline std::optional<int> bounded_divisibility_exponent(const FormParams& form, std::int64_t p)
{
    const i128 slope = checked::mul(8, form.m() - 2);
    const i128 shift = ell_shift(form);
    i128 pk = 1;
    for (int k = 1; k <= 62; ++k) {
        if (pk > (i128{1} << 62) / p) break;
        pk *= p;
        const i128 g = gcd128(slope, pk);
        if (mod_floor(shift, checked::narrow(g)) != 0) return k;
    }
    return std::nullopt;
}

inline PrimeEscape classify_unchecked(const FormParams& form, std::int64_t p)
{
    const Diagonal diag = form.weights();
    // Anisotropy at odd p is decided exactly by the Hasse symbol, and a liftable
    // zero would make the space isotropic, so the zero search is only for p = 2.
    if (p != 2 && is_isotropic(diag, p)) return {Escape::Isotropic, 0};
    if (p == 2 && has_liftable_primitive_zero_2adic(diag)) return {Escape::PrimitiveSolutions, 0};
    if (auto k = bounded_divisibility_exponent(form, p)) return {Escape::BoundedDivisibility, *k};
    throw std::logic_error("polyau: prime " + std::to_string(p) + " admits no escape for " + form.to_string());
}

inline int max_valuation(const FormParams& form, std::int64_t p)
{
    int v = 0;
    for (std::int64_t w : form.weights()) v = std::max(v, valuation(w, p));
    return v;
}

} // namespace detail

inline LocalReport check_odd_prime(const FormParams& form, std::int64_t p)
{
    if (p < 3 || p % 2 == 0 || !is_prime(p)) {
        throw std::invalid_argument("polyau: check_odd_prime requires an odd prime (use check_two for p = 2)");
    }
    LocalReport report;
    report.prime = p;
    report.isotropy = is_isotropic(form.weights(), p) ? Isotropy::Isotropic : Isotropy::Anisotropic;

    const auto w = form.weights();
    const bool m_is_2 = mod_floor(form.m() - 2, p) == 0;
    int divisible = 0;
    for (std::int64_t x : w) divisible += (x % p == 0) ? 1 : 0;
    const int max_k = 2 * (detail::max_valuation(form, p) + 2);

    std::optional<bool> represents_all;
    if (m_is_2) {
        represents_all = divisible < 3;
    } else if (divisible == 0) {
        represents_all = true;
    } else if (divisible == 1) {
        std::size_t ci = 0;
        while (w[ci] % p != 0) ++ci;
        const std::int64_t a = w[(ci + 1) % 3];
        const std::int64_t b = w[(ci + 2) % 3];
        const int q = valuation(w[ci], p);
        represents_all = (q % 2 == 0) || kronecker(mod_floor(a, p), p) == kronecker(mod_floor(-b, p), p);
    } else if (divisible == 3) {
        represents_all = false;
    } else {
        report.outside_trichotomy = true;
    }

    if (represents_all.has_value()) {
        if (!*represents_all) {
            report.obstruction = detail::find_missed_class(form, p, max_k);
            if (!report.obstruction) {
                throw std::logic_error("polyau: no obstruction witness found for " + form.to_string() + " at p=" +
                                       std::to_string(p));
            }
        }
    } else {
        report.obstruction = detail::find_missed_class(form, p, max_k);
    }
    if (!report.obstructed()) report.escape = detail::classify_unchecked(form, p);
    return report;
}

inline LocalReport check_two(const FormParams& form)
{
    LocalReport report;
    report.prime = 2;
    bool represents_all;
    if (form.m() % 4 != 0) {
        represents_all = (form.a() % 2 != 0) || (form.b() % 2 != 0) || (form.c() % 2 != 0);
    } else {
        represents_all = two_adic_universal(form.weights());
    }
    if (!represents_all) {
        report.obstruction = detail::find_missed_class(form, 2, 8);
        if (!report.obstruction) {
            throw std::logic_error("polyau: no 2-adic obstruction witness found for " + form.to_string());
        }
    } else {
        report.escape = detail::classify_unchecked(form, 2);
    }
    return report;
}

/// Reports for p = 2 and every odd prime dividing abc; other primes never obstruct.
inline std::vector<LocalReport> analyze_local(const FormParams& form)
{
    std::vector<LocalReport> reports{check_two(form)};
    std::vector<std::int64_t> primes;
    for (std::int64_t w : form.weights()) {
        for (const auto& pp : factorize(w)) {
            if (pp.prime != 2) primes.push_back(pp.prime);
        }
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (std::int64_t p : primes) reports.push_back(check_odd_prime(form, p));
    return reports;
}

inline bool any_obstruction(const std::vector<LocalReport>& reports)
{
    return std::any_of(reports.begin(), reports.end(), [](const LocalReport& r) { return r.obstructed(); });
}

inline bool has_local_obstruction(const FormParams& form)
{
    return any_obstruction(analyze_local(form));
}

/// Which escape holds at p. Throws when P is obstructed at p.
inline PrimeEscape classify_prime(const FormParams& form, std::int64_t p)
{
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("polyau: classify_prime requires a prime");
    const LocalReport report = p == 2 ? check_two(form) : check_odd_prime(form, p);
    if (report.obstructed()) {
        throw std::invalid_argument("polyau: classify_prime called on a form obstructed at p=" + std::to_string(p));
    }
    return report.escape;
}

} // namespace polyau

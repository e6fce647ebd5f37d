#pragma once

// Almost-universality certificate: with u = gcd_n ell_n and s its square part,
// P is almost universal when it has no local obstruction and
//   t r^2 = (a+b+c)(m-4)^2 (mod 8(m-2))
// is unsolvable for every squarefree t in the candidate set T.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyau/arith.hpp"
#include "polyau/forms.hpp"
#include "polyau/integer.hpp"
#include "polyau/local.hpp"

namespace polyau {

/// How the free n in gcd(4(m-2), ell'_n) is resolved.
enum class TSetRule {
    /// t | gcd(4(m-2), ell'_n) for every n, i.e. t | gcd(4(m-2), u/s).
    CommonDivisor,
    /// t | 4(m-2) and t | ell'_n for at least one n in a full period.
    PeriodUnion,
};

enum class Verdict { CertifiedAlmostUniversal, Inconclusive, LocallyObstructed };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::CertifiedAlmostUniversal: return "certified";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::LocallyObstructed: return "locally-obstructed";
    }
    return "?";
}

inline const char* to_string(TSetRule r)
{
    return r == TSetRule::CommonDivisor ? "common" : "union";
}

struct TCandidate {
    std::int64_t t;
    std::optional<std::int64_t> witness; ///< least r with t r^2 = ell_0 (mod 8(m-2)), if any
};

struct AUCertificate {
    FormParams form;
    std::int64_t u = 0;
    std::int64_t s = 0;
    std::vector<TCandidate> candidates; ///< empty when locally obstructed
    Verdict verdict = Verdict::Inconclusive;
    std::vector<LocalReport> local; ///< one report per relevant prime, escapes recorded as diagnostics

    std::vector<TCandidate> solvable() const
    {
        std::vector<TCandidate> out;
        for (const auto& c : candidates) {
            if (c.witness) out.push_back(c);
        }
        return out;
    }
};

/// u = gcd(ell_0, 8(m-2)); consecutive ell_n differ by 8(m-2).
inline std::int64_t gcd_ell(const FormParams& form)
{
    return checked::narrow(gcd128(ell_shift(form), checked::mul(8, form.m() - 2)));
}

inline std::vector<std::int64_t> candidate_t_set(const FormParams& form, TSetRule rule = TSetRule::CommonDivisor)
{
    const std::int64_t u = gcd_ell(form);
    const std::int64_t s = square_part(u).square;
    const std::int64_t four_level = checked::mul64(4, form.m() - 2);
    std::vector<std::int64_t> out;
    if (rule == TSetRule::CommonDivisor) {
        const auto g = static_cast<std::int64_t>(gcd128(four_level, u / s));
        return squarefree_divisors(g);
    }
    const i128 slope = checked::mul(8, form.m() - 2);
    const i128 base = ell_shift(form);
    if (base % s != 0 || slope % s != 0) {
        throw std::logic_error("polyau: square part of u does not divide ell_n");
    }
    for (std::int64_t t : squarefree_divisors(four_level)) {
        // ell'_n = (base + slope n)/s runs through an arithmetic progression; t | ell'_n for
        // some n iff gcd(slope/s, t) divides base/s.
        const i128 g = gcd128(slope / s, t);
        if ((base / s) % g == 0) out.push_back(t);
    }
    return out;
}

inline AUCertificate certify(const FormParams& form, TSetRule rule = TSetRule::CommonDivisor)
{
    AUCertificate cert{form, 0, 0, {}, Verdict::Inconclusive, {}};
    cert.u = gcd_ell(form);
    cert.s = square_part(cert.u).square;
    cert.local = analyze_local(form);
    if (any_obstruction(cert.local)) {
        cert.verdict = Verdict::LocallyObstructed;
        return cert;
    }
    const std::int64_t modulus = checked::mul64(8, form.m() - 2);
    const i128 rhs = ell_shift(form);
    bool any_solvable = false;
    for (std::int64_t t : candidate_t_set(form, rule)) {
        TCandidate cand{t, solvable_quadratic_congruence(t, rhs, modulus)};
        any_solvable = any_solvable || cand.witness.has_value();
        cert.candidates.push_back(cand);
    }
    cert.verdict = any_solvable ? Verdict::Inconclusive : Verdict::CertifiedAlmostUniversal;
    return cert;
}

} // namespace polyau

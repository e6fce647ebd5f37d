#pragma once

// Exact q-expansions on a scaled exponent grid: a QSeries of scale D and bound B
// holds the coefficient of q^{k/D} for every 0 <= k <= B. Only nonzero terms are
// stored (sorted by k), so thin theta series with huge bounds stay cheap; products
// accumulate into a dense buffer.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyau/arith.hpp"
#include "polyau/forms.hpp"
#include "polyau/integer.hpp"

namespace polyau {

struct Term {
    std::int64_t k;
    std::int64_t coeff;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Largest bound multiply() will allocate a dense accumulator for.
inline constexpr std::int64_t kMaxDenseBound = std::int64_t{1} << 26;

class QSeries {
public:
    QSeries(std::int64_t scale, std::int64_t bound) : scale_(scale), bound_(bound)
    {
        if (scale < 1) throw std::invalid_argument("polyau: series scale must be positive");
        if (bound < 0) throw std::invalid_argument("polyau: series bound must be non-negative");
    }

    /// Builds from arbitrary (k, coeff) pairs; duplicates are summed, zeros dropped.
    static QSeries from_terms(std::int64_t scale, std::int64_t bound, std::vector<Term> terms)
    {
        QSeries out(scale, bound);
        std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.k < y.k; });
        for (const Term& t : terms) {
            if (t.k < 0 || t.k > bound) throw std::out_of_range("polyau: term exponent outside [0, bound]");
            if (!out.terms_.empty() && out.terms_.back().k == t.k) {
                out.terms_.back().coeff = checked::add64(out.terms_.back().coeff, t.coeff);
            } else {
                out.terms_.push_back(t);
            }
        }
        out.drop_zeros();
        return out;
    }

    static QSeries from_dense(std::int64_t scale, const std::vector<std::int64_t>& coeffs)
    {
        if (coeffs.empty()) throw std::invalid_argument("polyau: dense series needs at least one coefficient");
        QSeries out(scale, static_cast<std::int64_t>(coeffs.size()) - 1);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            if (coeffs[k] != 0) out.terms_.push_back({static_cast<std::int64_t>(k), coeffs[k]});
        }
        return out;
    }

    static QSeries one(std::int64_t scale, std::int64_t bound) { return from_terms(scale, bound, {{0, 1}}); }

    std::int64_t scale() const noexcept { return scale_; }
    std::int64_t bound() const noexcept { return bound_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    std::int64_t coefficient(std::int64_t k) const
    {
        if (k < 0 || k > bound_) throw std::out_of_range("polyau: coefficient index outside [0, bound]");
        auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, std::int64_t v) { return t.k < v; });
        return (it != terms_.end() && it->k == k) ? it->coeff : 0;
    }

    std::vector<std::int64_t> dense() const
    {
        if (bound_ > kMaxDenseBound) throw std::length_error("polyau: series bound too large for a dense view");
        std::vector<std::int64_t> out(static_cast<std::size_t>(bound_) + 1, 0);
        for (const Term& t : terms_) out[static_cast<std::size_t>(t.k)] = t.coeff;
        return out;
    }

    bool is_zero() const noexcept { return terms_.empty(); }

    friend bool operator==(const QSeries&, const QSeries&) = default;

private:
    void drop_zeros()
    {
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const Term& t) { return t.coeff == 0; }),
                     terms_.end());
    }

    std::int64_t scale_;
    std::int64_t bound_;
    std::vector<Term> terms_;
};

/// Sum over x = h (mod N) of q^{w x^2 / 2N}, on grid D (k = w x^2 D / 2N).
inline QSeries shifted_theta(std::int64_t w, std::int64_t h, std::int64_t modulus, std::int64_t scale, std::int64_t bound)
{
    if (w < 1 || modulus < 1) throw std::invalid_argument("polyau: shifted_theta needs w >= 1 and N >= 1");
    const i128 two_n = checked::mul(2, modulus);
    const i128 wd = checked::mul(w, scale);
    const std::int64_t h0 = mod_floor(h, modulus);
    // x^2 mod 2N depends only on x mod 2N, and x = h (mod N) covers h0 and h0 + N there.
    for (i128 x : {static_cast<i128>(h0), static_cast<i128>(h0) + modulus}) {
        if (checked::mul(wd, x * x) % two_n != 0) {
            throw std::invalid_argument("polyau: scale does not make every theta exponent integral");
        }
    }
    // w x^2 D / 2N <= B  <=>  x^2 <= B 2N / (w D)
    const std::int64_t xmax = isqrt(checked::mul(bound, two_n) / wd);
    std::vector<Term> terms;
    const std::int64_t first = h0 - ((xmax + h0) / modulus) * modulus;
    for (std::int64_t x = first; x <= xmax; x += modulus) {
        if (x < -xmax) continue;
        const i128 k = checked::mul(wd, checked::mul(x, x)) / two_n;
        if (k <= bound) terms.push_back({checked::narrow(k), 1});
    }
    return QSeries::from_terms(scale, bound, std::move(terms));
}

/// Sum over n in Z of q^{n^2}.
inline QSeries jacobi_theta(std::int64_t bound)
{
    return shifted_theta(2, 0, 1, 1, bound);
}

inline QSeries multiply(const QSeries& f, const QSeries& g)
{
    if (f.scale() != g.scale()) throw std::invalid_argument("polyau: multiply requires equal scales");
    const std::int64_t bound = std::min(f.bound(), g.bound());
    if (bound > kMaxDenseBound) throw std::length_error("polyau: product bound exceeds the dense accumulator limit");
    std::vector<std::int64_t> acc(static_cast<std::size_t>(bound) + 1, 0);
    const auto& gt = g.terms();
    for (const Term& x : f.terms()) {
        if (x.k > bound) break;
        for (const Term& y : gt) {
            const std::int64_t k = x.k + y.k;
            if (k > bound) break;
            auto& slot = acc[static_cast<std::size_t>(k)];
            slot = checked::add64(slot, checked::mul64(x.coeff, y.coeff));
        }
    }
    QSeries out = QSeries::from_dense(f.scale(), acc);
    return out;
}

/// f(factor * tau): exponent k maps to k * factor. The bound scales too, capped if requested.
inline QSeries rescale(const QSeries& f, std::int64_t factor, std::optional<std::int64_t> cap = std::nullopt)
{
    if (factor < 1) throw std::invalid_argument("polyau: rescale factor must be positive");
    std::int64_t bound = checked::mul64(f.bound(), factor);
    if (cap) bound = std::min(bound, *cap);
    std::vector<Term> terms;
    for (const Term& t : f.terms()) {
        const i128 k = checked::mul(t.k, factor);
        if (k > bound) break;
        terms.push_back({static_cast<std::int64_t>(k), t.coeff});
    }
    return QSeries::from_terms(f.scale(), bound, std::move(terms));
}

/// The same series on grid new_scale; every stored exponent must land on the new grid.
inline QSeries regrid(const QSeries& f, std::int64_t new_scale)
{
    if (new_scale < 1) throw std::invalid_argument("polyau: scale must be positive");
    const std::int64_t bound = checked::narrow(checked::mul(f.bound(), new_scale) / f.scale());
    std::vector<Term> terms;
    for (const Term& t : f.terms()) {
        const i128 num = checked::mul(t.k, new_scale);
        if (num % f.scale() != 0) throw std::invalid_argument("polyau: exponent not representable on the target grid");
        const i128 k = num / f.scale();
        if (k <= bound) terms.push_back({static_cast<std::int64_t>(k), t.coeff});
    }
    return QSeries::from_terms(new_scale, bound, std::move(terms));
}

/// Keeps grid exponents k = residue (mod modulus).
inline QSeries sieve(const QSeries& f, std::int64_t modulus, std::int64_t residue)
{
    if (modulus < 1) throw std::invalid_argument("polyau: sieve modulus must be positive");
    const std::int64_t r = mod_floor(residue, modulus);
    std::vector<Term> terms;
    for (const Term& t : f.terms()) {
        if (t.k % modulus == r) terms.push_back(t);
    }
    return QSeries::from_terms(f.scale(), f.bound(), std::move(terms));
}

/// Sum over r = h (mod 2N/t) of r q^{t r^2 / 2N}, on grid 2N (k = t r^2).
inline QSeries unary_theta(std::int64_t h, std::int64_t t, std::int64_t modulus, std::int64_t bound)
{
    if (t < 1 || modulus < 1) throw std::invalid_argument("polyau: unary_theta needs t >= 1 and N >= 1");
    const std::int64_t two_n = checked::mul64(2, modulus);
    if (two_n % t != 0) throw std::invalid_argument("polyau: unary_theta requires t | 2N");
    if (square_part(t).square != 1) throw std::invalid_argument("polyau: unary_theta requires squarefree t");
    const std::int64_t step = two_n / t;
    const std::int64_t h0 = mod_floor(h, step);
    const std::int64_t rmax = isqrt(bound / t);
    std::vector<Term> terms;
    const std::int64_t first = h0 - ((rmax + h0) / step) * step;
    for (std::int64_t r = first; r <= rmax; r += step) {
        if (r < -rmax || r == 0) continue;
        terms.push_back({checked::mul64(t, checked::mul64(r, r)), r});
    }
    return QSeries::from_terms(two_n, bound, std::move(terms));
}

/// Theta series of the completed-square coset: the coefficient at grid k = ell_n
/// (scale 2N) counts (x,y,z) with P(x,y,z) = n.
inline QSeries form_theta(const FormParams& form, std::int64_t bound)
{
    const std::int64_t n = form.level();
    const std::int64_t h = -(form.m() - 4);
    const std::int64_t scale = 2 * n;
    QSeries out = shifted_theta(form.a(), h, n, scale, bound);
    out = multiply(out, shifted_theta(form.b(), h, n, scale, bound));
    return multiply(out, shifted_theta(form.c(), h, n, scale, bound));
}

/// ceil((k/12) [SL2(Z) : Gamma_1(N)]) with weight k = twice_weight / 2 and
/// index N^2 prod_{p | N} (1 - p^-2).
inline std::int64_t sturm_terms(std::int64_t twice_weight, std::int64_t level)
{
    if (level < 1) throw std::invalid_argument("polyau: sturm_terms requires N >= 1");
    if (twice_weight < 1) throw std::invalid_argument("polyau: sturm_terms requires positive weight");
    i128 reduced = level; // N / rad(N), squared below
    i128 factor = 1;
    for (const auto& pp : factorize(level)) {
        reduced /= pp.prime;
        factor = checked::mul(factor, checked::mul(pp.prime, pp.prime) - 1);
    }
    const i128 num = checked::mul(checked::mul(twice_weight, checked::mul(reduced, reduced)), factor);
    return checked::narrow((num + 23) / 24);
}

inline void write_text(std::ostream& os, const QSeries& f)
{
    os << "# scale=" << f.scale() << " bound=" << f.bound() << '\n';
    for (const Term& t : f.terms()) os << t.k << '\t' << t.coeff << '\n';
}

inline QSeries read_text(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("polyau: empty series text");
    std::int64_t scale = 0;
    std::int64_t bound = 0;
    {
        std::istringstream hs(line);
        std::string hash, s1, s2;
        if (!(hs >> hash >> s1 >> s2) || hash != "#" || s1.rfind("scale=", 0) != 0 || s2.rfind("bound=", 0) != 0) {
            throw std::runtime_error("polyau: malformed series header: " + line);
        }
        try {
            scale = std::stoll(s1.substr(6));
            bound = std::stoll(s2.substr(6));
        } catch (const std::exception&) {
            throw std::runtime_error("polyau: malformed series header: " + line);
        }
    }
    std::vector<Term> terms;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw std::runtime_error("polyau: malformed series line: " + line);
        std::size_t used_k = 0;
        std::size_t used_c = 0;
        Term t{};
        try {
            t.k = std::stoll(line.substr(0, tab), &used_k);
            t.coeff = std::stoll(line.substr(tab + 1), &used_c);
        } catch (const std::exception&) {
            throw std::runtime_error("polyau: malformed series line: " + line);
        }
        if (used_k != tab || used_c != line.size() - tab - 1) {
            throw std::runtime_error("polyau: malformed series line: " + line);
        }
        terms.push_back(t);
    }
    return QSeries::from_terms(scale, bound, std::move(terms));
}

} // namespace polyau

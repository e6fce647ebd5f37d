#pragma once

// Representation counts for diagonal ternary forms and shifted cosets L + nu,
// divisibility-split counts, and the exception set of P_{a,b,c,m}.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyau/arith.hpp"
#include "polyau/detail/bitset.hpp"
#include "polyau/forms.hpp"
#include "polyau/integer.hpp"

namespace polyau {

/// Default ceiling on scan targets (and on max_n for exception sieves).
inline constexpr std::int64_t kDefaultBudget = 10'000'000;

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(i128 required)
        : std::runtime_error("polyau: scan budget exceeded, required target " + polyau::to_string(required)),
          required_(required)
    {
    }
    i128 required() const noexcept { return required_; }

private:
    i128 required_;
};

struct DiagonalForm {
    std::array<std::int64_t, 3> coeffs;

    explicit DiagonalForm(std::int64_t a, std::int64_t b, std::int64_t c) : coeffs{a, b, c}
    {
        if (a < 1 || b < 1 || c < 1) throw std::invalid_argument("polyau: diagonal form needs positive coefficients");
    }
};

/// sum g_i (omega_i + s_i/d)^2 over omega in Z^3.
struct ShiftedCoset {
    std::array<std::int64_t, 3> gram;
    std::array<std::int64_t, 3> shift;
    std::int64_t denominator;
};

/// L = <a N^2, b N^2, c N^2>, nu = -(m-4)/N (1,1,1) with N = 2(m-2); Q(omega + nu) = ell_n.
inline ShiftedCoset coset_of(const FormParams& form)
{
    const std::int64_t n = form.level();
    const std::int64_t n2 = checked::mul64(n, n);
    const std::int64_t s = -(form.m() - 4);
    return {{checked::mul64(form.a(), n2), checked::mul64(form.b(), n2), checked::mul64(form.c(), n2)}, {s, s, s}, n};
}

namespace detail {

inline void check_budget(i128 target, std::int64_t budget)
{
    if (target > budget) throw BudgetExceeded(target);
}

// Calls visit(x, y, z) for every integer solution of sum g_i u_i^2 = target with
// u_i = r_i (mod d). The coordinate with the largest g is scanned outermost and
// the one with the smallest g is solved by exact square root.
template <typename Visit>
void for_each_solution(const std::array<std::int64_t, 3>& g, const std::array<std::int64_t, 3>& r, std::int64_t d,
                       i128 target, Visit&& visit)
{
    if (target < 0) return;
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int i, int j) { return g[i] > g[j]; });
    const int io = order[0], im = order[1], ii = order[2];
    auto residue_ok = [&](std::int64_t u, int idx) { return d == 1 || mod_floor(u - r[idx], d) == 0; };
    // First u >= -umax with u = r (mod d).
    auto first_in_class = [&](std::int64_t umax, int idx) {
        const std::int64_t r0 = mod_floor(r[idx], d);
        return r0 - ((umax + r0) / d) * d;
    };
    const std::int64_t omax = isqrt(target / g[io]);
    std::array<std::int64_t, 3> u{};
    for (std::int64_t uo = first_in_class(omax, io); uo <= omax; uo += d) {
        if (uo < -omax) continue;
        const i128 rest_o = target - static_cast<i128>(g[io]) * uo * uo;
        if (rest_o < 0) continue;
        const std::int64_t mmax = isqrt(rest_o / g[im]);
        for (std::int64_t um = first_in_class(mmax, im); um <= mmax; um += d) {
            if (um < -mmax) continue;
            const i128 rest_m = rest_o - static_cast<i128>(g[im]) * um * um;
            if (rest_m < 0 || rest_m % g[ii] != 0) continue;
            std::int64_t root = 0;
            if (!exact_sqrt(rest_m / g[ii], root)) continue;
            u[io] = uo;
            u[im] = um;
            if (residue_ok(root, ii)) {
                u[ii] = root;
                visit(u[0], u[1], u[2]);
            }
            if (root != 0 && residue_ok(-root, ii)) {
                u[ii] = -root;
                visit(u[0], u[1], u[2]);
            }
        }
    }
}

} // namespace detail

/// #{(x,y,z) in Z^3 : a x^2 + b y^2 + c z^2 = n}.
inline std::int64_t count_representations(const DiagonalForm& q, std::int64_t n, std::int64_t budget = kDefaultBudget)
{
    if (n < 0) throw std::invalid_argument("polyau: count_representations requires n >= 0");
    detail::check_budget(n, budget);
    std::int64_t count = 0;
    detail::for_each_solution(q.coeffs, {0, 0, 0}, 1, n, [&](std::int64_t, std::int64_t, std::int64_t) { ++count; });
    return count;
}

/// #{omega in Z^3 : Q(omega + nu) = target}, scanned in u_i = d omega_i + s_i.
inline std::int64_t count_coset_representations(const ShiftedCoset& c, std::int64_t target,
                                                std::int64_t budget = kDefaultBudget)
{
    if (target < 0) throw std::invalid_argument("polyau: count_coset_representations requires target >= 0");
    if (c.denominator < 1) throw std::invalid_argument("polyau: coset denominator must be positive");
    for (std::int64_t g : c.gram) {
        if (g < 1) throw std::invalid_argument("polyau: coset gram entries must be positive");
    }
    detail::check_budget(target, budget);
    const i128 scaled = checked::mul(target, checked::mul(c.denominator, c.denominator));
    std::int64_t count = 0;
    detail::for_each_solution(c.gram, c.shift, c.denominator, scaled,
                              [&](std::int64_t, std::int64_t, std::int64_t) { ++count; });
    return count;
}

struct DivisibilitySplit {
    std::int64_t all_divisible; ///< d | x, d | y, d | z
    std::int64_t rest;
};

inline DivisibilitySplit split_by_divisibility(const DiagonalForm& q, std::int64_t n, std::int64_t d,
                                               std::int64_t budget = kDefaultBudget)
{
    if (n < 0) throw std::invalid_argument("polyau: split_by_divisibility requires n >= 0");
    if (d < 2) throw std::invalid_argument("polyau: split_by_divisibility requires d >= 2");
    detail::check_budget(n, budget);
    DivisibilitySplit out{0, 0};
    detail::for_each_solution(q.coeffs, {0, 0, 0}, 1, n, [&](std::int64_t x, std::int64_t y, std::int64_t z) {
        if (x % d == 0 && y % d == 0 && z % d == 0) {
            ++out.all_divisible;
        } else {
            ++out.rest;
        }
    });
    return out;
}

/// Distinct values p_m(x) <= limit over x in Z (optionally |x| <= max_abs_x), ascending.
inline std::vector<std::int64_t> polygonal_values(std::int64_t m, std::int64_t limit,
                                                  std::optional<std::int64_t> max_abs_x = std::nullopt)
{
    std::vector<std::int64_t> out;
    for (int sign : {1, -1}) {
        for (std::int64_t x = (sign == 1 ? 0 : 1);; ++x) {
            if (max_abs_x && x > *max_abs_x) break;
            const i128 v = polygonal(m, sign * static_cast<i128>(x));
            // Each sign branch is nondecreasing for x >= 1.
            if (v > limit) {
                if (x >= 2) break;
                continue;
            }
            out.push_back(static_cast<std::int64_t>(v));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Sorted n in [0, max_n] with no (x,y,z) in Z^3 giving P(x,y,z) = n.
inline std::vector<std::int64_t> exception_set(const FormParams& form, std::int64_t max_n,
                                               std::int64_t budget = kDefaultBudget,
                                               std::optional<std::int64_t> max_abs_x = std::nullopt)
{
    if (max_n < 0) throw std::invalid_argument("polyau: exception_set requires max_n >= 0");
    detail::check_budget(max_n, budget);
    const auto size = static_cast<std::size_t>(max_n) + 1;
    const auto values = polygonal_values(form.m(), max_n, max_abs_x);

    // The smallest weight seeds the bitset; the larger two drive the shift passes,
    // whose cost is proportional to the number of values w v <= max_n.
    std::array<std::int64_t, 3> w = form.weights();
    std::sort(w.begin(), w.end());
    detail::BitSet first(size);
    for (std::int64_t v : values) {
        const i128 s = static_cast<i128>(w[0]) * v;
        if (s > max_n) break;
        first.set(static_cast<std::size_t>(s));
    }
    auto sum_with = [&](const detail::BitSet& src, std::int64_t weight) {
        detail::BitSet out(size);
        for (std::int64_t v : values) {
            const i128 s = static_cast<i128>(weight) * v;
            if (s > max_n) break;
            out.or_shifted_up(src, static_cast<std::size_t>(s));
        }
        return out;
    };
    const detail::BitSet all = sum_with(sum_with(first, w[1]), w[2]);
    std::vector<std::int64_t> out;
    for (std::size_t n = 0; n < size; ++n) {
        if (!all.test(n)) out.push_back(static_cast<std::int64_t>(n));
    }
    return out;
}

/// ell_n = t r^2 for some integer r.
inline bool classify_exception(const FormParams& form, std::int64_t n, std::int64_t t)
{
    if (t < 1) throw std::invalid_argument("polyau: classify_exception requires t >= 1");
    const i128 l = ell(form, n);
    if (l % t != 0) return false;
    std::int64_t root = 0;
    return exact_sqrt(l / t, root);
}

/// Squarefree t | 4(m-2) with ell_n = t r^2.
inline std::vector<std::int64_t> matching_t_classes(const FormParams& form, std::int64_t n)
{
    std::vector<std::int64_t> out;
    for (std::int64_t t : squarefree_divisors(checked::mul64(4, form.m() - 2))) {
        if (classify_exception(form, n, t)) out.push_back(t);
    }
    return out;
}

struct ExceptionRow {
    std::int64_t n;
    i128 ell_n;
    std::int64_t square_part; ///< 0 when ell_n = 0
    std::vector<std::int64_t> t_classes;
};

inline std::vector<ExceptionRow> describe_exceptions(const FormParams& form, const std::vector<std::int64_t>& ns)
{
    std::vector<ExceptionRow> rows;
    rows.reserve(ns.size());
    for (std::int64_t n : ns) {
        const i128 l = ell(form, n);
        rows.push_back({n, l, l == 0 ? 0 : square_part(checked::narrow(l)).square, matching_t_classes(form, n)});
    }
    return rows;
}

/// CSV with header n,ell_n,square_part,t_classes; t classes are ';'-separated.
inline void write_exceptions_csv(std::ostream& os, const std::vector<ExceptionRow>& rows)
{
    os << "n,ell_n,square_part,t_classes\n";
    for (const auto& row : rows) {
        os << row.n << ',' << polyau::to_string(row.ell_n) << ',' << row.square_part << ',';
        for (std::size_t i = 0; i < row.t_classes.size(); ++i) {
            if (i != 0) os << ';';
            os << row.t_classes[i];
        }
        os << '\n';
    }
}

} // namespace polyau

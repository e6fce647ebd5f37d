#pragma once

// Generalized polygonal numbers and the weighted ternary sum
//   P(x,y,z) = a p_m(x) + b p_m(y) + c p_m(z),
// together with the completed-square quantities
//   phi_m(x) = 2(m-2)x - (m-4),   ell_n = 8(m-2)n + (a+b+c)(m-4)^2,
// linked by 8(m-2) p_m(x) + (m-4)^2 = phi_m(x)^2.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "polyau/integer.hpp"

namespace polyau {

/// The quadruple (a, b, c, m) defining P_{a,b,c,m}.
class FormParams {
public:
    FormParams(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t m)
        : a_(a), b_(b), c_(c), m_(m)
    {
        if (a < 1 || b < 1 || c < 1) {
            throw std::invalid_argument("polyau: weights a, b, c must be positive");
        }
        if (m < 3) {
            throw std::invalid_argument("polyau: polygonal order m must be at least 3");
        }
        // Every derived constant below must be representable.
        checked::mul(checked::mul(8, m - 2), checked::add(checked::add(a, b), c));
    }

    std::int64_t a() const noexcept { return a_; }
    std::int64_t b() const noexcept { return b_; }
    std::int64_t c() const noexcept { return c_; }
    std::int64_t m() const noexcept { return m_; }
    std::array<std::int64_t, 3> weights() const noexcept { return {a_, b_, c_}; }
    std::int64_t weight_sum() const noexcept { return a_ + b_ + c_; }

    /// N = 2(m-2), the modulus of the shifted lattice coset.
    std::int64_t level() const noexcept { return 2 * (m_ - 2); }

    std::string to_string() const
    {
        return "P(" + std::to_string(a_) + "," + std::to_string(b_) + "," + std::to_string(c_) + "," +
               std::to_string(m_) + ")";
    }

    friend bool operator==(const FormParams&, const FormParams&) = default;

private:
    std::int64_t a_;
    std::int64_t b_;
    std::int64_t c_;
    std::int64_t m_;
};

/// p_m(x) = ((m-2)x^2 - (m-4)x) / 2; the numerator is always even.
inline i128 polygonal(std::int64_t m, i128 x)
{
    if (m < 3) throw std::invalid_argument("polyau: polygonal order m must be at least 3");
    i128 num = checked::sub(checked::mul(m - 2, checked::mul(x, x)), checked::mul(m - 4, x));
    return num / 2;
}

inline i128 phi(std::int64_t m, i128 x)
{
    return checked::sub(checked::mul(checked::mul(2, m - 2), x), m - 4);
}

inline i128 ell(const FormParams& form, i128 n)
{
    if (n < 0) throw std::invalid_argument("polyau: ell requires n >= 0");
    const std::int64_t m = form.m();
    i128 shift = checked::mul(form.weight_sum(), checked::mul(m - 4, m - 4));
    return checked::add(checked::mul(checked::mul(8, m - 2), n), shift);
}

/// The constant term (a+b+c)(m-4)^2 = ell_0.
inline i128 ell_shift(const FormParams& form)
{
    return ell(form, 0);
}

inline i128 evaluate(const FormParams& form, i128 x, i128 y, i128 z)
{
    const std::int64_t m = form.m();
    i128 sum = checked::mul(form.a(), polygonal(m, x));
    sum = checked::add(sum, checked::mul(form.b(), polygonal(m, y)));
    return checked::add(sum, checked::mul(form.c(), polygonal(m, z)));
}

} // namespace polyau

#pragma once

// H(15 l^2) = 1 + l - (-15/l) for primes l not dividing 30, and the count
// r_{<1,1,3>}(5 l^2) = 16 H(15 l^2) it predicts.

#include <cstdint>
#include <stdexcept>

#include "polyau/arith.hpp"
#include "polyau/reps.hpp"

namespace polyau {

inline std::int64_t hurwitz_H15(std::int64_t ell)
{
    if (!is_prime(ell)) throw std::invalid_argument("polyau: hurwitz_H15 requires a prime");
    if (ell == 2 || ell == 3 || ell == 5) throw std::invalid_argument("polyau: hurwitz_H15 requires a prime not dividing 30");
    return 1 + ell - kronecker(-15, ell);
}

inline bool jones_range(std::int64_t ell)
{
    return is_prime(ell) && (ell % 30 == 1 || ell % 30 == 19);
}

struct JonesObservation {
    std::int64_t ell;
    std::int64_t count;     ///< r_{<1,1,3>}(5 l^2) by direct scan
    std::int64_t predicted; ///< 16 H(15 l^2)
    bool in_asserted_range; ///< l = 1, 19 (mod 30)

    bool matches() const noexcept { return count == predicted; }
};

/// Count and prediction for any admissible prime; outside l = 1, 19 (mod 30) this is exploratory.
inline JonesObservation jones_observation(std::int64_t ell, std::int64_t budget = kDefaultBudget)
{
    const std::int64_t h = hurwitz_H15(ell);
    const std::int64_t target = checked::mul64(5, checked::mul64(ell, ell));
    return {ell, count_representations(DiagonalForm(1, 1, 3), target, budget), 16 * h, jones_range(ell)};
}

inline bool verify_jones(std::int64_t ell, std::int64_t budget = kDefaultBudget)
{
    if (!jones_range(ell)) throw std::invalid_argument("polyau: verify_jones requires a prime l = 1, 19 (mod 30)");
    return jones_observation(ell, budget).matches();
}

} // namespace polyau

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "polyau/arith.hpp"

using namespace polyau;

namespace {

std::vector<bool> sieve_primes(int n)
{
    std::vector<bool> p(n + 1, true);
    p[0] = p[1] = false;
    for (int i = 2; i * i <= n; ++i) {
        if (p[i]) {
            for (int j = i * i; j <= n; j += i) p[j] = false;
        }
    }
    return p;
}

std::int64_t powmod_slow(std::int64_t a, std::int64_t e, std::int64_t p)
{
    std::int64_t r = 1;
    a %= p;
    if (a < 0) a += p;
    for (std::int64_t i = 0; i < e; ++i) r = r * a % p;
    return r;
}

} // namespace

TEST(Kronecker, KnownValues)
{
    EXPECT_EQ(kronecker(1, 3), 1);
    EXPECT_EQ(kronecker(-15, 19), 1);
    EXPECT_EQ(kronecker(-15, 7), -1);
    EXPECT_EQ(kronecker(3, 3), 0);
    EXPECT_EQ(kronecker(2, 7), 1);
    EXPECT_EQ(kronecker(3, 8), -1);
    EXPECT_EQ(kronecker(-1, -1), -1);
    EXPECT_EQ(kronecker(5, 1), 1);
    EXPECT_THROW(kronecker(3, 0), std::invalid_argument);
}

TEST(Kronecker, AgreesWithEulerCriterion)
{
    const auto primes = sieve_primes(200);
    for (int p = 3; p < 200; ++p) {
        if (!primes[p]) continue;
        for (int a = 1; a < p; ++a) {
            const std::int64_t e = powmod_slow(a, (p - 1) / 2, p);
            const int expected = e == 1 ? 1 : -1;
            ASSERT_EQ(kronecker(a, p), expected) << a << "/" << p;
            ASSERT_EQ(kronecker(a - p, p), expected);
        }
    }
}

TEST(Kronecker, CompletelyMultiplicative)
{
    for (int a = -30; a <= 30; ++a) {
        for (int b = -30; b <= 30; ++b) {
            for (int n = 1; n <= 60; ++n) ASSERT_EQ(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
        }
    }
    for (int a = -40; a <= 40; ++a) {
        for (int n = -30; n <= 30; ++n) {
            for (int k = -30; k <= 30; ++k) {
                if (n == 0 || k == 0) continue;
                ASSERT_EQ(kronecker(a, n * k), kronecker(a, n) * kronecker(a, k)) << a << " " << n << " " << k;
            }
        }
    }
}

TEST(Primes, MillerRabinMatchesSieve)
{
    const auto primes = sieve_primes(200000);
    for (int n = 0; n <= 200000; ++n) ASSERT_EQ(is_prime(n), static_cast<bool>(primes[n])) << n;
    EXPECT_TRUE(is_prime(1'000'000'007));
    EXPECT_TRUE(is_prime(9'223'372'036'854'775'783LL));
    EXPECT_FALSE(is_prime(3'215'031'751LL)); // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(Factorize, RandomProducts)
{
    std::mt19937_64 rng(20241015);
    for (int iter = 0; iter < 400; ++iter) {
        std::int64_t n = 1;
        const int parts = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < parts; ++i) {
            const std::int64_t f = 2 + static_cast<std::int64_t>(rng() % 5000);
            if (n > (std::int64_t{1} << 50) / f) break;
            n *= f;
        }
        const auto fac = factorize(n);
        std::int64_t prod = 1;
        for (std::size_t i = 0; i < fac.size(); ++i) {
            ASSERT_TRUE(is_prime(fac[i].prime));
            ASSERT_GE(fac[i].exponent, 1);
            if (i > 0) {
                ASSERT_LT(fac[i - 1].prime, fac[i].prime);
            }
            prod *= ipow(fac[i].prime, fac[i].exponent);
        }
        ASSERT_EQ(prod, n);
    }
}

TEST(Factorize, LargeSemiprimes)
{
    const auto f = factorize(1'000'000'007LL * 998'244'353LL);
    ASSERT_EQ(f.size(), 2U);
    EXPECT_EQ(f[0], (PrimePower{998'244'353, 1}));
    EXPECT_EQ(f[1], (PrimePower{1'000'000'007, 1}));
    const auto g = factorize(4'611'686'014'132'420'609LL); // (2^31 - 1)^2
    ASSERT_EQ(g.size(), 1U);
    EXPECT_EQ(g[0], (PrimePower{2'147'483'647, 2}));
    EXPECT_TRUE(factorize(1).empty());
    EXPECT_THROW(factorize(0), std::invalid_argument);
}

TEST(Hilbert, KnownValues)
{
    EXPECT_EQ(hilbert_odd(1, 1, 3), 1);
    EXPECT_EQ(hilbert_odd(3, 3, 3), -1);
    EXPECT_EQ(hilbert_odd(5, 5, 5), 1); // (-1)^{(5-1)/2} = 1
    EXPECT_EQ(hilbert_odd(2, 7, 3), 1);
    EXPECT_EQ(hilbert_odd(3, 2, 3), -1); // (2/3) = -1
    EXPECT_EQ(hilbert_odd(-1, -3, 3), -1);
    EXPECT_THROW(hilbert_odd(1, 1, 2), std::invalid_argument);
    EXPECT_THROW(hilbert_odd(1, 1, 9), std::invalid_argument);
    EXPECT_THROW(hilbert_odd(0, 1, 3), std::invalid_argument);
}

namespace {

// Independent definition: (a,b)_p = 1 iff a x^2 + b y^2 - z^2 has a nontrivial
// p-adic zero. After stripping p^2 factors, and rewriting (pu, pv, -1) as
// (u, v, -p), at most one coefficient is divisible by p; then a p-adic zero
// exists iff there is a primitive zero mod p^3 with a unit coordinate sitting on
// a unit coefficient (Hensel).
int hilbert_by_search(std::int64_t a, std::int64_t b, std::int64_t p)
{
    auto reduce = [&](std::int64_t v) {
        while (v % (p * p) == 0) v /= p * p;
        return v;
    };
    std::int64_t co[3] = {reduce(a), reduce(b), -1};
    if (co[0] % p == 0 && co[1] % p == 0) {
        co[0] /= p;
        co[1] /= p;
        co[2] = -p;
    }
    const std::int64_t mod = p * p * p;
    for (std::int64_t x = 0; x < mod; ++x) {
        for (std::int64_t y = 0; y < mod; ++y) {
            for (std::int64_t z = 0; z < mod; ++z) {
                const std::int64_t v[3] = {x, y, z};
                if (x % p == 0 && y % p == 0 && z % p == 0) continue;
                const std::int64_t q = co[0] * x * x + co[1] * y * y + co[2] * z * z;
                if (((q % mod) + mod) % mod != 0) continue;
                for (int i = 0; i < 3; ++i) {
                    if (co[i] % p != 0 && v[i] % p != 0) return 1;
                }
            }
        }
    }
    return -1;
}

} // namespace

TEST(Hilbert, MatchesSolvabilitySearch)
{
    for (std::int64_t p : {3, 5}) {
        std::vector<std::int64_t> vals;
        for (std::int64_t u : {1, 2, -1, -2, 3, 7}) {
            if (u % p == 0) continue;
            vals.push_back(u);
            vals.push_back(u * p);
        }
        for (std::int64_t a : vals) {
            for (std::int64_t b : vals) ASSERT_EQ(hilbert_odd(a, b, p), hilbert_by_search(a, b, p)) << a << "," << b << " p=" << p;
        }
    }
}

TEST(Hilbert, SymmetricAndBilinear)
{
    for (std::int64_t p : {3, 5, 7}) {
        std::vector<std::int64_t> vals;
        for (std::int64_t u = -2 * p; u <= 2 * p; ++u) {
            if (u == 0 || u % p == 0) continue;
            vals.push_back(u);
            vals.push_back(u * p);
            vals.push_back(u * p * p);
        }
        for (std::int64_t a : vals) {
            for (std::int64_t b1 : vals) {
                ASSERT_EQ(hilbert_odd(a, b1, p), hilbert_odd(b1, a, p));
                for (std::int64_t b2 : {std::int64_t{1}, std::int64_t{-1}, p, 2 * p, p + 1, -p * p}) {
                    ASSERT_EQ(hilbert_odd(a, b1 * b2, p), hilbert_odd(a, b1, p) * hilbert_odd(a, b2, p));
                }
            }
        }
    }
}

TEST(Hilbert, UnitsGiveOne)
{
    for (std::int64_t p : {3, 5, 7, 11, 13}) {
        for (std::int64_t a = 1; a < 40; ++a) {
            for (std::int64_t b = -40; b < 40; ++b) {
                if (a % p == 0 || b == 0 || b % p == 0) continue;
                ASSERT_EQ(hilbert_odd(a, b, p), 1);
            }
        }
    }
}

TEST(SquarePart, KnownValues)
{
    EXPECT_EQ(square_part(1).square, 1);
    EXPECT_EQ(square_part(1).cofactor, 1);
    EXPECT_EQ(square_part(845).square, 169);
    EXPECT_EQ(square_part(845).cofactor, 5);
    EXPECT_EQ(square_part(48).square, 16);
    EXPECT_EQ(square_part(48).cofactor, 3);
    EXPECT_THROW(square_part(0), std::invalid_argument);
}

TEST(SquarePart, MatchesBruteForce)
{
    for (std::int64_t n = 1; n <= 100000; ++n) {
        std::int64_t best = 1;
        for (std::int64_t d = 1; d * d <= n; ++d) {
            if (n % (d * d) == 0) best = d * d;
        }
        const auto sp = square_part(n);
        ASSERT_EQ(sp.square, best) << n;
        ASSERT_EQ(sp.square * sp.cofactor, n);
        for (std::int64_t d = 2; d * d <= sp.cofactor; ++d) ASSERT_NE(sp.cofactor % (d * d), 0);
    }
}

TEST(SquarefreeDivisors, KnownValues)
{
    EXPECT_EQ(squarefree_divisors(1), (std::vector<std::int64_t>{1}));
    EXPECT_EQ(squarefree_divisors(12), (std::vector<std::int64_t>{1, 2, 3, 6}));
    EXPECT_EQ(squarefree_divisors(60), (std::vector<std::int64_t>{1, 2, 3, 5, 6, 10, 15, 30}));
}

TEST(SquarefreeDivisors, MatchesBruteForce)
{
    for (std::int64_t n = 1; n <= 3000; ++n) {
        std::vector<std::int64_t> expected;
        for (std::int64_t d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            bool sqf = true;
            for (std::int64_t q = 2; q * q <= d; ++q) sqf = sqf && d % (q * q) != 0;
            if (sqf) expected.push_back(d);
        }
        ASSERT_EQ(squarefree_divisors(n), expected) << n;
    }
}

TEST(QuadraticCongruence, KnownValues)
{
    EXPECT_FALSE(solvable_quadratic_congruence(1, 845, 120).has_value());
    const auto r = solvable_quadratic_congruence(5, 845, 120);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, 1); // least witness
    EXPECT_EQ((5 * 13 * 13 - 845) % 120, 0); // 13 is a witness as well
    EXPECT_EQ(solvable_quadratic_congruence(1, 0, 7), std::optional<std::int64_t>(0));
    EXPECT_EQ(solvable_quadratic_congruence(3, -1, 1), std::optional<std::int64_t>(0));
}

TEST(QuadraticCongruence, MatchesResidueTable)
{
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 3000; ++iter) {
        const std::int64_t modulus = 1 + static_cast<std::int64_t>(rng() % 400);
        const std::int64_t t = 1 + static_cast<std::int64_t>(rng() % 60);
        const std::int64_t rhs = static_cast<std::int64_t>(rng() % 100000) - 50000;
        // table of t r^2 mod M built from the squares table, first hit kept
        std::vector<std::int64_t> first(modulus, -1);
        std::vector<std::int64_t> squares(modulus);
        for (std::int64_t r = 0; r < modulus; ++r) squares[r] = (r * r) % modulus;
        for (std::int64_t r = modulus - 1; r >= 0; --r) first[(t % modulus) * squares[r] % modulus] = r;
        const std::int64_t target = ((rhs % modulus) + modulus) % modulus;
        const auto got = solvable_quadratic_congruence(t, rhs, modulus);
        if (first[target] < 0) {
            ASSERT_FALSE(got.has_value());
        } else {
            ASSERT_EQ(got, std::optional<std::int64_t>(first[target]));
        }
    }
}

TEST(Integer, Helpers)
{
    EXPECT_EQ(valuation(845, 13), 2);
    EXPECT_EQ(valuation(-48, 2), 4);
    EXPECT_THROW(valuation(0, 3), std::invalid_argument);
    EXPECT_EQ(isqrt(0), 0);
    EXPECT_EQ(isqrt(99), 9);
    EXPECT_EQ(isqrt(static_cast<i128>(3'037'000'499LL) * 3'037'000'499LL), 3'037'000'499LL);
    std::int64_t root = 0;
    EXPECT_TRUE(exact_sqrt(1805 / 5, root));
    EXPECT_EQ(root, 19);
    EXPECT_FALSE(exact_sqrt(1805, root));
    EXPECT_EQ(to_string(static_cast<i128>(-12345)), "-12345");
    EXPECT_EQ(to_string(static_cast<i128>(1) << 100), "1267650600228229401496703205376");
    EXPECT_EQ(mod_floor(-7, 5), 3);
    EXPECT_THROW(ipow(10, 19), std::overflow_error);
}

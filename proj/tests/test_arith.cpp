#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "arith.hpp"
#include "errors.hpp"
#include "oracles.hpp"

using namespace pg;

TEST_CASE("factor matches trial division") {
    CHECK(factor(1).factors.empty());
    Factors64 f16383 = factor64(16383);
    CHECK(f16383 == Factors64{{3, 1}, {43, 1}, {127, 1}});
    CHECK(factor64(1048575) == Factors64{{3, 1}, {5, 2}, {11, 1}, {31, 1}, {41, 1}});
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        u64 n = rng() % 10000000 + 1;
        CHECK(factor64(n) == oracle::trial_factor(n));
    }
    for (u64 n = 1; n <= 3000; ++n) REQUIRE(factor64(n) == oracle::trial_factor(n));
}

TEST_CASE("factor of 128-bit values multiplies back") {
    u128 n = (static_cast<u128>(1) << 92) - 1;
    Factorization F = factor(n);
    CHECK(F.multiply_out() == n);
    for (const auto& pp : F.factors) CHECK(is_prime128(pp.prime));
    CHECK(parse_u128(to_string_u128(n)) == n);
}

TEST_CASE("multiplicative order") {
    CHECK(mult_order(9, 14) == 3);
    CHECK(mult_order(7, 2) == 1);
    CHECK(mult_order(2, 7) == 3);
    CHECK_THROWS_AS(mult_order(2, 4), DomainError);
    for (u64 n = 2; n <= 300; ++n)
        for (u64 a = 1; a < n; ++a)
            if (oracle::naive_gcd(a, n) == 1) REQUIRE(mult_order(a, n) == oracle::naive_order(a, n));
}

TEST_CASE("euler phi and divisors") {
    for (u64 n = 1; n <= 500; ++n) {
        REQUIRE(euler_phi(n) == oracle::naive_phi(n));
        std::vector<u64> d;
        for (u64 k = 1; k <= n; ++k)
            if (n % k == 0) d.push_back(k);
        REQUIRE(divisors(n) == d);
    }
}

TEST_CASE("digit sums") {
    CHECK(digit_sum(1, 9, 3, 14) == 21);
    CHECK(digit_sum(1, 1, 1, 2) == 1);
    CHECK(digit_sum(5, 67, 3, 6) != 9);
    CHECK_THROWS_AS(digit_sum(2, 9, 3, 14), DomainError);
}

TEST_CASE("cyclotomic polynomials agree with repeated division") {
    CHECK(cyclotomic_poly(1) == std::vector<i64>{-1, 1});
    CHECK(cyclotomic_poly(6) == std::vector<i64>{1, -1, 1});
    CHECK(cyclotomic_poly(12) == std::vector<i64>{1, 0, -1, 0, 1});
    for (u64 n = 1; n <= 120; ++n) {
        REQUIRE(cyclotomic_poly(n) == oracle::cyclotomic_by_division(n));
        REQUIRE(cyclotomic_poly(n).size() == euler_phi(n) + 1);
    }
    // 105 is the first index with a coefficient outside {-1, 0, 1}.
    CHECK(cyclotomic_poly(105)[7] == -2);
}

TEST_CASE("binary quadratic representations") {
    CHECK(repr_a2_27b2(31) == std::make_pair<i64, i64>(2, 1));
    CHECK(repr_a2_27b2(43) == std::make_pair<i64, i64>(4, 1));
    CHECK_FALSE(repr_a2_27b2(7));
    CHECK(repr_a2_64b2_odd(73) == std::make_pair<i64, i64>(3, 1));
    CHECK(repr_a2_64b2_odd(113) == std::make_pair<i64, i64>(7, 1));
    CHECK_FALSE(repr_a2_64b2_odd(17));
    for (u64 p = 3; p < 5000; p += 2) {
        if (!is_prime(p)) continue;
        bool brute27 = false, brute64 = false;
        for (i64 a = 0; a * a <= static_cast<i64>(p); ++a)
            for (i64 b = 1; a * a + 27 * b * b <= static_cast<i64>(p); ++b) {
                if (a * a + 27 * b * b == static_cast<i64>(p)) brute27 = true;
                if (a % 2 && b % 2 && a * a + 64 * b * b == static_cast<i64>(p)) brute64 = true;
            }
        REQUIRE(repr_a2_27b2(p).has_value() == brute27);
        REQUIRE(repr_a2_64b2_odd(p).has_value() == brute64);
    }
}

TEST_CASE("modular inverse, crt and legendre") {
    CHECK(mod_inverse(1, 9) == 1);
    CHECK(mod_inverse(3, 7) == 5);
    CHECK_THROWS_AS(mod_inverse(3, 9), DomainError);
    for (u64 n = 2; n < 200; ++n)
        for (u64 x = 1; x < n; ++x)
            if (oracle::naive_gcd(x, n) == 1) REQUIRE(x * mod_inverse(static_cast<i64>(x), n) % n == 1);
    for (u64 r1 = 0; r1 < 7; ++r1)
        for (u64 r2 = 0; r2 < 9; ++r2) {
            u64 x = crt_pair(r1, 7, r2, 9);
            REQUIRE(x % 7 == r1);
            REQUIRE(x % 9 == r2);
        }
    for (u64 p : {3, 5, 7, 11, 13, 67, 191}) {
        for (u64 a = 0; a < p; ++a) {
            bool square = false;
            for (u64 y = 1; y < p; ++y) square = square || y * y % p == a;
            int expect = a == 0 ? 0 : (square ? 1 : -1);
            REQUIRE(legendre(static_cast<i64>(a), p) == expect);
        }
    }
}

TEST_CASE("primitive roots and subgroup membership") {
    for (u64 p : {3, 5, 7, 23, 67, 127}) {
        for (unsigned e = 1; ipow(p, e) < 20000; ++e) {
            u64 pe = ipow(p, e);
            REQUIRE(oracle::naive_order(primitive_root_prime_power(p, e), pe) == (p - 1) * (pe / p));
        }
    }
    for (u64 n = 2; n < 60; ++n)
        for (u64 g = 1; g < n; ++g) {
            if (oracle::naive_gcd(g, n) != 1) continue;
            std::vector<char> in(n, 0);
            u64 x = 1;
            do {
                in[x] = 1;
                x = x * g % n;
            } while (x != 1);
            for (u64 y = 0; y < n; ++y) REQUIRE(in_subgroup(y, g, n) == (in[y] != 0));
        }
    CHECK_THROWS_AS(ipow(10, 30), ResourceError);
}

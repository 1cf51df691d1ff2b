#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cyclotomic.hpp"
#include "oracles.hpp"

using namespace pg;

namespace {

CycElt random_elt(std::mt19937_64& rng, u64 n) {
    std::vector<i64> a(n);
    for (auto& x : a) x = static_cast<i64>(rng() % 21) - 10;
    return CycElt::from_exponent_sums(n, a);
}

}  // namespace

TEST_CASE("ring axioms on random elements") {
    std::mt19937_64 rng(11);
    for (u64 n : {12, 30, 42}) {
        for (int it = 0; it < 40; ++it) {
            CycElt a = random_elt(rng, n), b = random_elt(rng, n), c = random_elt(rng, n);
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE(a * b == b * a);
            REQUIRE(a + b == b + a);
            REQUIRE(a - a == CycElt(n));
            REQUIRE(a * CycElt::from_int(n, 1) == a);
            REQUIRE(conj(conj(a)) == a);
        }
    }
}

TEST_CASE("canonical form matches a numeric embedding") {
    std::mt19937_64 rng(3);
    for (u64 n : {1, 2, 5, 12, 21, 30, 42, 134}) {
        for (int it = 0; it < 10; ++it) {
            std::vector<i64> a(n);
            std::complex<double> direct = 0;
            for (u64 k = 0; k < n; ++k) {
                a[k] = static_cast<i64>(rng() % 7) - 3;
                direct += static_cast<double>(a[k]) * std::polar(1.0, 2 * std::numbers::pi * k / n);
            }
            CycElt x = CycElt::from_exponent_sums(n, a);
            REQUIRE(x.coeffs().size() == oracle::naive_phi(n));
            REQUIRE(std::abs(oracle::numeric(x) - direct) < 1e-8);
        }
    }
}

TEST_CASE("roots of unity") {
    for (u64 n : {1, 3, 6, 14, 42}) {
        CycElt z = zeta_power(n, 1);
        CHECK(pow(z, n) == CycElt::from_int(n, 1));
        CHECK(zeta_power(n, -1) * z == CycElt::from_int(n, 1));
        std::vector<i64> ones(n, 1);
        if (n > 1) CHECK(CycElt::from_exponent_sums(n, ones).is_zero());
    }
    CHECK(zeta_power(6, 3) == CycElt::from_int(6, -1));
}

TEST_CASE("galois action composes and is a ring map") {
    std::mt19937_64 rng(5);
    const u64 n = 42;
    std::vector<i64> units;
    for (i64 t = 1; t < static_cast<i64>(n); ++t)
        if (oracle::naive_gcd(t, n) == 1) units.push_back(t);
    for (int it = 0; it < 20; ++it) {
        CycElt a = random_elt(rng, n), b = random_elt(rng, n);
        for (i64 s : units)
            for (i64 t : {1, 5, 13, 41}) {
                REQUIRE(galois_apply(galois_apply(a, s), t) == galois_apply(a, s * t % static_cast<i64>(n)));
            }
        REQUIRE(galois_apply(a * b, 5) == galois_apply(a, 5) * galois_apply(b, 5));
        REQUIRE(galois_apply(a, -1) == conj(a));
    }
}

TEST_CASE("embedding is a ring homomorphism on monomials") {
    for (auto [n, M] : std::vector<std::pair<u64, u64>>{{3, 6}, {7, 14}, {21, 42}}) {
        for (i64 j = 0; j < static_cast<i64>(n); ++j)
            for (i64 k = 0; k < static_cast<i64>(n); ++k) {
                CycElt a = zeta_power(n, j), b = zeta_power(n, k);
                REQUIRE(embed(a * b, M) == embed(a, M) * embed(b, M));
                REQUIRE(embed(a + b, M) == embed(a, M) + embed(b, M));
                REQUIRE(embed(a, M) == zeta_power(M, j * static_cast<i64>(M / n)));
            }
    }
}

TEST_CASE("text rendering") {
    CHECK(to_string(CycElt(5)).rfind("0", 0) == 0);
    CHECK(to_string(zeta_power(3, 1)).find("z") != std::string::npos);
}

TEST_CASE("worked examples") {
    CycElt one3 = CycElt::from_int(3, 1);
    CHECK(embed(one3, 6) == CycElt::from_int(6, 1));
    CHECK(embed(zeta_power(3, 1), 6) == zeta_power(6, 2));
    CHECK(embed(zeta_power(6, 2), 6).coeffs().size() == 2);
    CHECK(embed(CycElt::from_int(2, -1), 14) == CycElt::from_int(14, -1));
    CHECK_THROWS(embed(one3, 7));
    CHECK_THROWS(galois_apply(zeta_power(6, 1), 3));

    CycElt g = zeta_power(3, 1) - zeta_power(3, 2);
    CHECK(galois_apply(g, 1) == g);
    CHECK(galois_apply(g, 2) == -g);
    CHECK(galois_apply(zeta_power(5, 1), 2) == zeta_power(5, 2));
    CHECK(pow(g, 0) == CycElt::from_int(3, 1));
    CHECK(pow(g, 2) == CycElt::from_int(3, -3));
    CHECK(pow(g, 4) == CycElt::from_int(3, 9));
}

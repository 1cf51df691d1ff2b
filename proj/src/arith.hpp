#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pg {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

struct PrimePower {
    u128 prime;
    unsigned exponent;
};

struct Factorization {
    u128 n = 1;
    std::vector<PrimePower> factors;  // ascending primes

    u128 multiply_out() const;
};

// Small-modulus view used almost everywhere else.
using Factors64 = std::vector<std::pair<u64, unsigned>>;

u128 parse_u128(const std::string& s);
std::string to_string_u128(u128 v);

u64 gcd(u64 a, u64 b);
u64 lcm(u64 a, u64 b);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 ipow(u64 b, unsigned e);  // throws ResourceError on overflow
i64 mod(i64 a, i64 m);        // canonical residue in [0, m)

bool is_prime(u64 n);
bool is_prime128(u128 n);

Factorization factor(u128 n);
Factors64 factor64(u64 n);
std::vector<u64> divisors(u64 n);
std::vector<u64> divisors(const Factors64& fac);
u64 euler_phi(u64 n);
u64 euler_phi(const Factors64& fac);

// Least k >= 1 with a^k = 1 mod n.
u64 mult_order(u64 a, u64 n);
// Same, with the factorization of a multiple of the order supplied.
u64 mult_order_in(u64 a, u64 n, u64 group_exponent, const Factors64& exponent_factors);

// Sum of [t p^i]_N over i < f.
u64 digit_sum(u64 t, u64 p, u64 f, u64 N);

// Coefficients low to high; Phi_n is monic of degree phi(n).
const std::vector<i64>& cyclotomic_poly(u64 n);

std::optional<std::pair<i64, i64>> repr_a2_27b2(u64 p);
std::optional<std::pair<i64, i64>> repr_a2_64b2_odd(u64 p);

u64 mod_inverse(i64 x, u64 y);

// Legendre symbol (a/p) for odd prime p: -1, 0 or 1.
int legendre(i64 a, u64 p);

u64 primitive_root_prime_power(u64 p, unsigned e);

// CRT for coprime moduli; returns x mod m1*m2.
u64 crt_pair(u64 r1, u64 m1, u64 r2, u64 m2);

// True iff x lies in the cyclic subgroup generated by g modulo n.
bool in_subgroup(u64 x, u64 g, u64 n);

}  // namespace pg

#include "arith.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <unordered_map>

#include "errors.hpp"

namespace pg {

namespace {

constexpr u64 kTrialLimit = 1000000;

const std::vector<u32>& small_primes() {
    static const std::vector<u32> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<u32> out;
        for (u64 i = 2; i <= kTrialLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(static_cast<u32>(i));
            for (u64 j = i * i; j <= kTrialLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

u128 addmod128(u128 a, u128 b, u128 m) { return a >= m - b ? a - (m - b) : a + b; }

u128 mulmod128(u128 a, u128 b, u128 m) {
    if ((a >> 64) == 0 && (b >> 64) == 0 && (m >> 64) == 0)
        return static_cast<u128>(mulmod(static_cast<u64>(a), static_cast<u64>(b), static_cast<u64>(m)));
    a %= m;
    b %= m;
    u128 r = 0;
    while (b) {
        if (b & 1) r = addmod128(r, a, m);
        a = addmod128(a, a, m);
        b >>= 1;
    }
    return r;
}

u128 powmod128(u128 a, u128 e, u128 m) {
    u128 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod128(r, a, m);
        a = mulmod128(a, a, m);
        e >>= 1;
    }
    return r;
}

u128 gcd128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool miller_rabin_round(u128 n, u128 a, u128 d, unsigned s) {
    a %= n;
    if (a == 0) return true;
    u128 x = powmod128(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mulmod128(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

u128 brent_rho(u128 n, u128 c) {
    if (n % 2 == 0) return 2;
    u128 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u128 m = 128;
    u128 r = 1;
    auto step = [&](u128 v) { return addmod128(mulmod128(v, v, n), c, n); };
    do {
        x = y;
        for (u128 i = 0; i < r; ++i) y = step(y);
        u128 k = 0;
        do {
            ys = y;
            for (u128 i = 0; i < std::min(m, r - k); ++i) {
                y = step(y);
                u128 diff = x > y ? x - y : y - x;
                q = mulmod128(q, diff, n);
            }
            g = gcd128(q, n);
            k += m;
        } while (k < r && g == 1);
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            ys = step(ys);
            u128 diff = x > ys ? x - ys : ys - x;
            g = gcd128(diff, n);
        } while (g == 1);
    }
    return g;
}

void split(u128 n, std::vector<u128>& out) {
    if (n == 1) return;
    if (is_prime128(n)) {
        out.push_back(n);
        return;
    }
    for (u128 c = 1;; ++c) {
        u128 d = brent_rho(n, c);
        if (d != n && d != 1) {
            split(d, out);
            split(n / d, out);
            return;
        }
    }
}

}  // namespace

u128 Factorization::multiply_out() const {
    u128 r = 1;
    for (const auto& pp : factors)
        for (unsigned i = 0; i < pp.exponent; ++i) r *= pp.prime;
    return r;
}

u128 parse_u128(const std::string& s) {
    if (s.empty()) throw DomainError("empty integer");
    u128 v = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9') throw DomainError("not a non-negative integer: " + s);
        u128 nv = v * 10 + static_cast<u128>(ch - '0');
        if (nv / 10 != v) throw ResourceError("integer exceeds 128 bits: " + s);
        v = nv;
    }
    return v;
}

std::string to_string_u128(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

u64 gcd(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 lcm(u64 a, u64 b) { return a / gcd(a, b) * b; }

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 ipow(u64 b, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (__builtin_mul_overflow(r, b, &r)) throw ResourceError("integer power overflows 64 bits");
    }
    return r;
}

i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        if (!miller_rabin_round(n, a, d, s)) return false;
    }
    return true;
}

bool is_prime128(u128 n) {
    if ((n >> 64) == 0) return is_prime(static_cast<u64>(n));
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return false;
    }
    u128 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::mt19937_64 rng(0x5eed5eedULL);
    for (int i = 0; i < 40; ++i) {
        u128 a = ((static_cast<u128>(rng()) << 64) | rng()) % (n - 3) + 2;
        if (!miller_rabin_round(n, a, d, s)) return false;
    }
    return true;
}

Factorization factor(u128 n) {
    if (n == 0) throw DomainError("factor: n must be positive");
    Factorization out;
    out.n = n;
    std::vector<u128> primes;
    for (u32 p : small_primes()) {
        if (static_cast<u128>(p) * p > n) break;
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1) {
        if (n <= static_cast<u128>(kTrialLimit) * kTrialLimit)
            primes.push_back(n);
        else
            split(n, primes);
    }
    std::sort(primes.begin(), primes.end());
    for (u128 p : primes) {
        if (!out.factors.empty() && out.factors.back().prime == p)
            ++out.factors.back().exponent;
        else
            out.factors.push_back({p, 1});
    }
    return out;
}

Factors64 factor64(u64 n) {
    Factors64 out;
    if (n <= 1) {
        if (n == 0) throw DomainError("factor: n must be positive");
        return out;
    }
    if (n < (1ULL << 20)) {
        for (u64 p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        if (n > 1) out.emplace_back(n, 1);
        return out;
    }
    for (const auto& pp : factor(n).factors) out.emplace_back(static_cast<u64>(pp.prime), pp.exponent);
    return out;
}

std::vector<u64> divisors(const Factors64& fac) {
    std::vector<u64> ds{1};
    for (auto [p, e] : fac) {
        std::size_t cur = ds.size();
        u64 pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<u64> divisors(u64 n) { return divisors(factor64(n)); }

u64 euler_phi(const Factors64& fac) {
    u64 r = 1;
    for (auto [p, e] : fac) r *= (p - 1) * ipow(p, e - 1);
    return r;
}

u64 euler_phi(u64 n) { return euler_phi(factor64(n)); }

namespace {

void merge_factors(Factors64& into, const Factors64& more) {
    for (auto [p, e] : more) {
        auto it = std::find_if(into.begin(), into.end(), [p = p](const auto& x) { return x.first == p; });
        if (it == into.end())
            into.emplace_back(p, e);
        else
            it->second = std::max(it->second, e);
    }
}

}  // namespace

u64 mult_order_in(u64 a, u64 n, u64 exponent, const Factors64& exponent_factors) {
    u64 order = exponent;
    for (auto [r, e] : exponent_factors) {
        for (unsigned i = 0; i < e; ++i) {
            if (powmod(a, order / r, n) == 1)
                order /= r;
            else
                break;
        }
    }
    return order;
}

u64 mult_order(u64 a, u64 n) {
    if (n == 0) throw DomainError("mult_order: modulus must be positive");
    if (gcd(a % n, n) != 1 && n != 1) throw DomainError("mult_order: gcd(a, n) != 1");
    if (n == 1) return 1;
    // Carmichael exponent lambda(n) with its factorization.
    Factors64 lam_fac;
    u64 lam = 1;
    for (auto [p, e] : factor64(n)) {
        u64 part;
        Factors64 part_fac;
        if (p == 2) {
            part = e == 1 ? 1 : (e == 2 ? 2 : ipow(2, e - 2));
            if (part > 1) part_fac.emplace_back(2, e == 2 ? 1 : e - 2);
        } else {
            part = (p - 1) * ipow(p, e - 1);
            part_fac = factor64(p - 1);
            if (e > 1) merge_factors(part_fac, {{p, e - 1}});
        }
        lam = lcm(lam, part);
        merge_factors(lam_fac, part_fac);
    }
    std::sort(lam_fac.begin(), lam_fac.end());
    return mult_order_in(a % n, n, lam, lam_fac);
}

u64 digit_sum(u64 t, u64 p, u64 f, u64 N) {
    if (N == 0) throw DomainError("digit_sum: modulus must be positive");
    if (gcd(t % N, N) != 1 || gcd(p % N, N) != 1) {
        if (N != 1) throw DomainError("digit_sum: t and p must be prime to N");
    }
    u64 x = t % N, step = p % N, sum = 0;
    for (u64 i = 0; i < f; ++i) {
        sum += x;
        x = mulmod(x, step, N);
    }
    return sum;
}

namespace {

std::vector<i64> compute_cyclotomic(u64 n) {
    if (n == 1) return {-1, 1};
    Factors64 fac = factor64(n);
    u64 deg = euler_phi(fac);
    // Phi_n = prod over squarefree e | rad(n) of (1 - x^{n/e})^{mu(e)}, as a power series cut at deg.
    std::vector<i64> poly(deg + 1, 0);
    poly[0] = 1;
    std::size_t r = fac.size();
    std::vector<std::pair<u64, int>> factors_list;  // (d, mu(n/d))
    for (u64 mask = 0; mask < (1ULL << r); ++mask) {
        u64 e = 1;
        int mu = 1;
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1) {
                e *= fac[i].first;
                mu = -mu;
            }
        factors_list.emplace_back(n / e, mu);
    }
    std::sort(factors_list.begin(), factors_list.end());
    auto checked = [](i64 a, i64 b, bool add) {
        i64 out;
        bool ovf = add ? __builtin_add_overflow(a, b, &out) : __builtin_sub_overflow(a, b, &out);
        if (ovf) throw ResourceError("cyclotomic polynomial coefficients overflow 64 bits");
        return out;
    };
    for (auto [d, mu] : factors_list) {
        if (d > deg) continue;
        if (mu == 1) {
            for (u64 k = deg; k >= d; --k) {
                poly[k] = checked(poly[k], poly[k - d], false);
                if (k == d) break;
            }
        } else {
            for (u64 k = d; k <= deg; ++k) poly[k] = checked(poly[k], poly[k - d], true);
        }
    }
    if (poly[deg] != 1) throw InternalError("cyclotomic polynomial is not monic");
    return poly;
}

}  // namespace

const std::vector<i64>& cyclotomic_poly(u64 n) {
    if (n == 0 || n > 1000000) throw DomainError("cyclotomic_poly: n must lie in [1, 10^6]");
    static std::shared_mutex mu;
    static std::unordered_map<u64, std::unique_ptr<const std::vector<i64>>> cache;
    {
        std::shared_lock lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return *it->second;
    }
    auto poly = std::make_unique<const std::vector<i64>>(compute_cyclotomic(n));
    std::unique_lock lock(mu);
    auto [it, inserted] = cache.emplace(n, std::move(poly));
    return *it->second;
}

namespace {

std::optional<u64> exact_sqrt(u64 v) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    if (r * r == v) return r;
    return std::nullopt;
}

}  // namespace

std::optional<std::pair<i64, i64>> repr_a2_27b2(u64 p) {
    for (u64 b = 1; 27 * b * b <= p; ++b) {
        if (auto a = exact_sqrt(p - 27 * b * b)) return std::make_pair(static_cast<i64>(*a), static_cast<i64>(b));
    }
    return std::nullopt;
}

std::optional<std::pair<i64, i64>> repr_a2_64b2_odd(u64 p) {
    for (u64 b = 1; 64 * b * b <= p; b += 2) {
        auto a = exact_sqrt(p - 64 * b * b);
        if (a && (*a & 1)) return std::make_pair(static_cast<i64>(*a), static_cast<i64>(b));
    }
    return std::nullopt;
}

u64 mod_inverse(i64 x, u64 y) {
    if (y == 0) throw DomainError("mod_inverse: modulus must be positive");
    if (y == 1) return 0;
    i64 a = mod(x, static_cast<i64>(y)), b = static_cast<i64>(y);
    i64 x0 = 1, x1 = 0;
    while (b) {
        i64 q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    }
    if (a != 1) throw DomainError("mod_inverse: arguments are not coprime");
    return static_cast<u64>(mod(x0, static_cast<i64>(y)));
}

int legendre(i64 a, u64 p) {
    u64 r = static_cast<u64>(mod(a, static_cast<i64>(p)));
    if (r == 0) return 0;
    return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

u64 primitive_root_prime_power(u64 p, unsigned e) {
    u64 pe = ipow(p, e);
    if (p == 2) {
        if (e == 1) return 1;
        if (e == 2) return 3;
        throw DomainError("no primitive root modulo 2^k for k >= 3");
    }
    u64 phi = (p - 1) * ipow(p, e - 1);
    Factors64 fac = factor64(p - 1);
    if (e > 1) fac.emplace_back(p, e - 1);
    for (u64 g = 2; g < pe; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (auto [r, k] : fac) {
            if (powmod(g, phi / r, pe) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw InternalError("primitive root search failed");
}

u64 crt_pair(u64 r1, u64 m1, u64 r2, u64 m2) {
    // x = r1 + m1 * k, with k = (r2 - r1) / m1 mod m2
    u64 M = m1 * m2;
    if (m2 == 1) return r1 % M;
    u64 inv = mod_inverse(static_cast<i64>(m1 % m2), m2);
    u64 diff = (r2 % m2 + m2 - r1 % m2) % m2;
    u64 k = mulmod(diff, inv, m2);
    return (r1 % m1 + m1 * k) % M;
}

bool in_subgroup(u64 x, u64 g, u64 n) {
    if (n == 1) return true;
    x %= n;
    g %= n;
    u64 y = 1 % n;
    do {
        if (y == x) return true;
        y = mulmod(y, g, n);
    } while (y != 1 % n);
    return false;
}

}  // namespace pg

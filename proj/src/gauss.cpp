#include "gauss.hpp"

#include <algorithm>
#include <map>

#include "errors.hpp"
#include "purity.hpp"

namespace pg {

namespace {

void require_divides(const Fq& F, u64 N) {
    if (N == 0 || (F.q - 1) % N != 0) throw DomainError("N must divide q - 1");
}

CycElt from_counts(u64 p, u64 N, const std::vector<i64>& a) { return CycElt::from_exponent_sums(p * N, a); }

// Arithmetic modulo a prime below 2^62.
struct ModP {
    u64 l;
    u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % l); }
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= l ? s - l : s;
    }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1 % l;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
};

// Least prime l = 1 mod M with l > bound.
u64 prime_one_mod(u64 M, u64 bound) {
    u64 k = bound / M + 1;
    for (;; ++k) {
        if (k > ((1ULL << 62) - 1) / M) throw ResourceError("no suitable auxiliary prime below 2^62");
        u64 l = k * M + 1;
        if (l > bound && is_prime(l)) return l;
    }
}

u64 root_of_unity(const ModP& R, u64 M) {
    Factors64 fac = factor64(M);
    for (u64 x = 2;; ++x) {
        u64 y = R.pow(x, (R.l - 1) / M);
        bool ok = true;
        for (auto [r, e] : fac)
            if (R.pow(y, M / r) == 1) {
                ok = false;
                break;
            }
        if (ok) return y;
    }
}

// Given W[r] = image of sum_{k = r mod N} zeta_p^{Tr omega^k}, decide purity of G(eta_N).
bool modular_decision(const Fq& F, u64 N, const std::vector<u64>& W, const ModP& R, u64 zN) {
    u64 p = F.p;
    u64 g = gcd(N, p - 1);
    std::vector<u64> zpow(N);
    zpow[0] = 1;
    for (u64 i = 1; i < N; ++i) zpow[i] = R.mul(zpow[i - 1], zN);
    u64 pf = R.pow(p % R.l, F.f);
    auto val = [&](u64 a) {
        u64 s = 0, e = 0;
        for (u64 r = 0; r < N; ++r) {
            s = R.add(s, R.mul(W[r], zpow[e]));
            e += a;
            if (e >= N) e %= N;
        }
        return s;
    };
    u64 v1 = val(1);
    u64 v2 = R.mul(v1, v1);
    std::optional<u64> k0;
    for (u64 k = 0; k < g; ++k)
        if (v2 == R.mul(zpow[(N / g) * k % N], pf)) {
            k0 = k;
            break;
        }
    if (!k0) return false;
    u64 d = gcd((F.q - 1) / (p - 1), N);
    for (u64 a = 1; a < N; ++a) {
        if (gcd(a, N) != 1) continue;
        u64 va = a == 1 ? v1 : val(a);
        u64 sq = R.mul(va, va);
        u64 target = R.mul(zpow[mulmod((N / g) * *k0 % N, a, N)], pf);
        for (u64 u = 0; u < N; u += d) {
            u64 e = (N - mulmod(2 * a % N, u, N)) % N;
            if (R.mul(zpow[e], sq) != target) return false;
        }
    }
    return true;
}

}  // namespace

CountMatrix count_matrix(const Fq& F, u64 N) {
    require_divides(F, N);
    if (static_cast<u128>(F.p) * N > (1ULL << 28)) throw ResourceError("count matrix larger than 2^28 cells");
    CountMatrix cm{F.p, N, std::vector<u32>(F.p * N, 0)};
    u64 r = 0;
    for (u64 k = 0; k + 1 < F.q; ++k) {
        ++cm.c[F.trace_log[k] * N + r];
        if (++r == N) r = 0;
    }
    return cm;
}

GaussSumValue gauss_sum(const Fq& F, const CountMatrix& cm, i64 j) {
    u64 p = cm.p, N = cm.N, n = p * N;
    u64 jj = static_cast<u64>(mod(j, static_cast<i64>(N)));
    std::vector<i64> a(n, 0);
    for (u64 t = 0; t < p; ++t)
        for (u64 r = 0; r < N; ++r) {
            u32 c = cm.c[t * N + r];
            if (c == 0) continue;
            a[(t * N + mulmod(jj, r, N) * p) % n] += c;
        }
    return {from_counts(p, N, a), F.p, F.f, N, j};
}

GaussSumValue gauss_sum(const Fq& F, u64 N, i64 j) {
    require_divides(F, N);
    u64 p = F.p, n = p * N;
    if (n > (1ULL << 28)) throw ResourceError("conductor pN above 2^28");
    u64 jj = static_cast<u64>(mod(j, static_cast<i64>(N)));
    std::vector<i64> a(n, 0);
    u64 e = 0;  // j k mod N
    for (u64 k = 0; k + 1 < F.q; ++k) {
        u64 idx = F.trace_log[k] * N + e * p;
        ++a[idx >= n ? idx - n : idx];
        e += jj;
        if (e >= N) e -= N;
    }
    return {from_counts(p, N, a), F.p, F.f, N, j};
}

int quadratic_closed_form(u64 p, u64 f) {
    if (p % 2 == 0) throw DomainError("quadratic closed form needs odd p");
    int k = f % 2 == 1 ? 0 : 2;  // (-1)^{f-1}
    if (p % 4 == 3) k = (k + static_cast<int>(f % 4)) % 4;
    return k;
}

SemiPrimitiveSign semiprimitive_closed_form(u64 p, u64 N, u64 f) {
    if (N <= 2) throw DomainError("semi-primitive evaluation needs N > 2");
    if (gcd(p % N, N) != 1) throw DomainError("p must be prime to N");
    u64 o = mult_order(p % N, N);
    u64 s = 0, x = 1;
    for (u64 i = 1; i <= o; ++i) {
        x = mulmod(x, p % N, N);
        if (x == N - 1) {
            s = i;
            break;
        }
    }
    if (s == 0) throw DomainError("p is not semi-primitive modulo N");
    if (f % (2 * s) != 0) throw DomainError("f must be a multiple of 2s");
    u64 t = f / (2 * s);
    u64 e = t - 1;
    if (p > 2) {
        u64 ps1 = ipow(p, static_cast<unsigned>(s)) + 1;
        e += (ps1 / N) * t;  // N | p^s + 1
    }
    return {s, t, e % 2 == 0 ? 1 : -1};
}

u64 subfield_log_scale(const Fq& F, const Fq& B) {
    if (B.p != F.p || B.f % F.f != 0) throw DomainError("not a subfield");
    u64 step = (static_cast<u64>(B.q) - 1) / (F.q - 1);
    u32 image;
    if (F.f == 1) {
        image = F.omega;
    } else {
        std::optional<u32> beta;
        for (u64 k = 0; k < F.q - 1 && !beta; ++k) {
            u32 x = B.element(k * step);
            u32 acc = 0;
            for (std::size_t i = F.modulus.size(); i-- > 0;) acc = B.add(B.mul(acc, x), F.modulus[i]);
            if (acc == 0) beta = x;
        }
        if (!beta) throw InternalError("no root of the subfield modulus found");
        u32 acc = 0;
        u32 w = F.omega;
        std::vector<u32> coeffs(F.f);
        for (u32 i = 0; i < F.f; ++i) {
            coeffs[i] = w % F.p;
            w /= F.p;
        }
        for (std::size_t i = F.f; i-- > 0;) acc = B.add(B.mul(acc, *beta), coeffs[i]);
        image = acc;
    }
    u64 lg = B.dlog(image);
    if (lg % step != 0) throw InternalError("embedded element outside the subfield");
    return (lg / step) % (F.q - 1);
}

bool dh_lift_check(const Fq& F, u64 N, i64 j, u64 s, const FieldOptions& opts) {
    require_divides(F, N);
    if (s == 0) throw DomainError("lift degree must be positive");
    if (s == 1) return true;
    FqPtr B = build_field(F.p, static_cast<u32>(F.f * s), opts);
    u64 c = subfield_log_scale(F, *B);
    u64 jj = mulmod(static_cast<u64>(mod(j, static_cast<i64>(N))), mod_inverse(static_cast<i64>(c % N), N), N);
    if (N == 1) jj = 0;
    GaussSumValue big = gauss_sum(*B, N, static_cast<i64>(jj));
    GaussSumValue small = gauss_sum(F, N, j);
    CycElt rhs = pow(small.value, s);
    if (s % 2 == 0) rhs = -rhs;
    return big.value == rhs;
}

bool dh_product_check(const Fq& F, u64 N, i64 j, u64 l) {
    if (l % 2 == 0) throw DomainError("product formula needs odd l");
    if (mod(j, static_cast<i64>(N)) == 0) throw DomainError("eta must be nontrivial");
    if (l == 1) return true;
    u64 L = lcm(N, l);
    require_divides(F, L);
    CountMatrix cm = count_matrix(F, L);
    i64 base = static_cast<i64>((L / N) * static_cast<u64>(mod(j, static_cast<i64>(N))));
    GaussSumValue lhs = gauss_sum(F, cm, base * static_cast<i64>(l));
    CycElt prod = CycElt::from_int(F.p * L, 1);
    for (u64 i = 0; i < l; ++i) prod = prod * gauss_sum(F, cm, base + static_cast<i64>(i * (L / l))).value;
    u64 t = crt_pair(1, L, mod_inverse(static_cast<i64>(l), F.p), F.p);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), F.p, F.f * (l - 1) / 2);
    return scale * lhs.value == galois_apply(prod, static_cast<i64>(t));
}

bool is_pure_direct(const GaussSumValue& G) {
    u64 g = gcd(G.N, G.p - 1);
    mpz_class target;
    mpz_ui_pow_ui(target.get_mpz_t(), G.p, G.f * g);
    return pow(G.value, 2 * g) == CycElt::from_int(G.value.conductor(), target);
}

bool is_pure_modular(const Fq& F, u64 N) {
    require_divides(F, N);
    if (N == 1) return false;
    u64 M = F.p * N;
    ModP R{prime_one_mod(M, 2 * static_cast<u64>(F.q) + 1)};
    u64 z = root_of_unity(R, M);
    u64 zN = R.pow(z, F.p), zp = R.pow(z, N);
    std::vector<u64> zp_pow(F.p);
    zp_pow[0] = 1;
    for (u64 t = 1; t < F.p; ++t) zp_pow[t] = R.mul(zp_pow[t - 1], zp);
    std::vector<u64> W(N, 0);
    u64 r = 0;
    for (u64 k = 0; k + 1 < F.q; ++k) {
        W[r] = R.add(W[r], zp_pow[F.trace_log[k]]);
        if (++r == N) r = 0;
    }
    return modular_decision(F, N, W, R, zN);
}

std::vector<std::pair<u64, bool>> pure_modular_all_divisors(const Fq& F) {
    u64 Q1 = F.q - 1;
    std::vector<std::pair<u64, bool>> out;
    if (Q1 < 2) return out;
    u64 M = F.p * Q1;
    ModP R{prime_one_mod(M, 2 * static_cast<u64>(F.q) + 1)};
    u64 z = root_of_unity(R, M);
    u64 zp = R.pow(z, Q1);
    std::vector<u64> zp_pow(F.p);
    zp_pow[0] = 1;
    for (u64 t = 1; t < F.p; ++t) zp_pow[t] = R.mul(zp_pow[t - 1], zp);

    Factors64 fac = factor64(Q1);
    std::vector<u64> divs = divisors(fac);
    std::sort(divs.rbegin(), divs.rend());
    std::map<u64, std::vector<u64>> folded;
    {
        std::vector<u64> h(Q1);
        for (u64 k = 0; k < Q1; ++k) h[k] = zp_pow[F.trace_log[k]];
        folded.emplace(Q1, std::move(h));
    }
    for (u64 N : divs) {
        if (N != Q1) {
            u64 parent = 0;
            for (auto [r, e] : fac)
                if ((Q1 / N) % r == 0) {
                    parent = N * r;
                    break;
                }
            const auto& src = folded.at(parent);
            std::vector<u64> W(N, 0);
            for (u64 i = 0; i < parent; ++i) W[i % N] = R.add(W[i % N], src[i]);
            folded.emplace(N, std::move(W));
        }
        if (N >= 2) {
            u64 zN = R.pow(z, F.p * (Q1 / N));
            out.emplace_back(N, modular_decision(F, N, folded.at(N), R, zN));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SignData sign_constants(const Fq& F, u64 N) {
    require_divides(F, N);
    u64 p = F.p;
    Triple t = make_triple(N, p);
    if (t.f != F.f) throw DomainError("field degree must equal the order of p modulo N");
    StarResult star = has_property_star(N, t.f, p);
    if (!star.star || !star.m1_index) throw DomainError("triple lacks the subproduct property");
    std::size_t c = *star.m1_index;

    SignData sd;
    sd.m = t.m;
    sd.parts.push_back(t.parts[c]);
    for (std::size_t i = 0; i < t.parts.size(); ++i)
        if (i != c) sd.parts.push_back(t.parts[i]);
    sd.epsilon_order_bound = 2 * gcd(N, p - 1);

    u64 n = p * N;
    CountMatrix cm = count_matrix(F, N);
    CycElt G2 = gauss_sum(F, cm, static_cast<i64>(t.m)).value;
    auto eta_exponent = [&](u64 mJ) {
        u64 nJ = t.m / mJ;
        return mulmod(nJ, mod_inverse(static_cast<i64>(nJ), 2 * mJ), N);
    };
    auto match = [&](const CycElt& x, const CycElt& y, u64 order) -> std::optional<u64> {
        for (u64 k = 0; k < order; ++k)
            if (x == zeta_power(n, static_cast<i64>(k * (n / order))) * y) return k;
        return std::nullopt;
    };

    u64 m1 = sd.parts[0];
    CycElt G1 = gauss_sum(F, cm, static_cast<i64>(eta_exponent(m1))).value;
    auto s1 = match(G1, G2, m1);
    if (!s1) throw InternalError("G(eta_{2m_1}) is not a root-of-unity multiple of G(eta_2)");
    if (*s1 != 0) throw InternalError("s_1 is nonzero");
    sd.s.push_back(0);
    for (std::size_t i = 1; i < sd.parts.size(); ++i) {
        u64 mi = sd.parts[i];
        CycElt Gi = gauss_sum(F, cm, static_cast<i64>(eta_exponent(m1 * mi))).value;
        auto si = match(Gi, G1, mi);
        if (!si) throw InternalError("no sign constant matches for a prime-power part");
        sd.s.push_back(*si);
    }
    u64 A = 0;
    for (std::size_t i = 0; i < sd.parts.size(); ++i) A = (A + sd.s[i] * (t.m / sd.parts[i])) % t.m;
    sd.A = A;
    return sd;
}

std::vector<u64> sign_identity_failures(const Fq& F, u64 N, const SignData& sd) {
    require_divides(F, N);
    u64 n = F.p * N;
    u64 m = N / 2;
    u64 p1 = 0;
    if (!sd.parts.empty()) p1 = factor64(sd.parts[0]).front().first;
    CountMatrix cm = count_matrix(F, N);
    CycElt G2 = gauss_sum(F, cm, static_cast<i64>(m)).value;
    std::vector<u64> bad;
    for (u64 j = 1; j < N; j += 2) {
        if (p1 != 0 && (N / gcd(j, N)) % p1 != 0) continue;
        CycElt lhs = gauss_sum(F, cm, static_cast<i64>(j)).value;
        CycElt rhs = zeta_power(n, static_cast<i64>(mulmod(2 * sd.A % N, j, N) * F.p)) * G2;
        if (lhs != rhs) bad.push_back(j);
    }
    return bad;
}

}  // namespace pg

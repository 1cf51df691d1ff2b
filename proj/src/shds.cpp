#include "shds.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <set>
#include <thread>

#include "errors.hpp"
#include "purity.hpp"

namespace pg {

namespace {

std::vector<char> membership(const Fq& F, u64 N, const std::vector<u64>& I) {
    std::vector<char> inI(N, 0);
    for (u64 i : I) inI[i] = 1;
    std::vector<char> memb(F.q, 0);
    for (u32 x = 1; x < F.q; ++x) memb[x] = inI[F.dlog(x) % N];
    return memb;
}

std::vector<u32> elements_of(const std::vector<char>& memb) {
    std::vector<u32> out;
    for (u32 x = 0; x < memb.size(); ++x)
        if (memb[x]) out.push_back(x);
    return out;
}

unsigned thread_count(unsigned requested) {
    return requested ? requested : std::max(1u, std::thread::hardware_concurrency());
}

u64 triple_value(const Fq& F, const std::vector<char>& memb, const std::vector<u32>& D, u32 x, u32 ax) {
    u64 t = 0;
    for (u32 y : D)
        if (memb[F.add(y, x)] && memb[F.add(y, ax)]) ++t;
    return t;
}

}  // namespace

std::vector<u64> compute_Y(u64 N, u64 p, YMode mode) {
    Triple t = make_triple(N, p);
    if (!stickelberger_pure(N, t.f, t.p)) throw DomainError("triple is not pure");
    std::vector<u64> Y;
    if (mode == YMode::General) {
        for (u64 h : divisors(t.m)) {
            if (h == 1) continue;
            u64 fh = mult_order(t.p % (2 * h), 2 * h);
            if (!stickelberger_pure(2 * h, fh, t.p)) Y.push_back(h);
        }
        return Y;
    }
    StarResult star = has_property_star(N, t.f, t.p);
    if (!star.star) throw DomainError("triple lacks the subproduct property");
    u64 m1 = star.m1_index ? t.parts[*star.m1_index] : 1;
    for (u64 h : divisors(t.m / m1))
        if (h > 1) Y.push_back(h);
    return Y;
}

IndexValidation validate_index_set(const std::vector<u64>& I, u64 N, const std::vector<u64>& Y) {
    IndexValidation v;
    if (N < 2 || N % 2 != 0) throw DomainError("N must be even");
    u64 m = N / 2;
    if (I.size() != m) throw DomainError("index set must have N/2 elements");
    std::vector<char> hit(m, 0);
    for (u64 x : I) {
        if (x >= N) throw DomainError("index out of range");
        if (hit[x % m]) {
            v.ok = false;
            v.violated = 1;
            v.detail = "residue " + std::to_string(x % m) + " mod " + std::to_string(m) + " repeated";
            return v;
        }
        hit[x % m] = 1;
    }
    for (u64 h : Y) {
        std::vector<i64> a(2 * h, 0);
        for (u64 x : I) ++a[x % (2 * h)];
        if (!CycElt::from_exponent_sums(2 * h, a).is_zero()) {
            v.ok = false;
            v.violated = 2;
            v.level = h;
            v.detail = "sum of zeta_" + std::to_string(2 * h) + "^x over I is nonzero";
            return v;
        }
    }
    return v;
}

std::vector<u64> default_index_set(u64 N, u64 m1) {
    if (N % 4 != 2) throw DomainError("N must be 2 mod 4");
    u64 m = N / 2;
    if (m1 < 3 || m % m1 != 0) throw DomainError("m_1 must be an odd divisor of m above 1");
    u64 k = m / m1;
    std::vector<u64> I;
    for (u64 i = 0; i <= (m1 - 3) / 2; ++i)
        for (u64 j = 0; j < 2 * k; ++j) I.push_back(2 * i * k + j);
    u64 base = (m1 - 1) * k;
    for (u64 i = 0; i <= (k - 1) / 2; ++i) I.push_back(base + 2 * i);
    for (u64 i = 1; i <= (k - 1) / 2; ++i) I.push_back(base + m + 2 * i - 1);
    std::sort(I.begin(), I.end());
    return I;
}

ShdsInstance build_instance(u64 p, u64 f, u64 s, u64 N, std::vector<u64> I, const FieldOptions& opts) {
    if (!is_prime(p)) throw DomainError("p must be prime");
    if (s == 0 || s % 2 == 0) throw DomainError("lift degree s must be odd");
    if (N < 2 || N % 2 != 0) throw DomainError("N must be even");
    if (gcd(p, N) != 1) throw DomainError("p must be prime to N");
    u64 order = mult_order(p % N, N);
    if (f == 0 || f % order != 0) throw DomainError("f must be a multiple of the order of p modulo N");
    if (f != order && N / (N & (~N + 1)) != 1) throw DomainError("f must equal the order of p modulo N when N has odd prime factors");
    if (f * s > 64) throw ResourceError("field degree too large");
    u64 q = ipow(p, static_cast<unsigned>(f * s));
    if (q % 4 != 3) throw DomainError("q must be 3 mod 4");
    if (!stickelberger_pure(N, f, p)) throw DomainError("triple is not pure");
    std::sort(I.begin(), I.end());

    ShdsInstance inst;
    inst.p = p;
    inst.f = f;
    inst.s = s;
    inst.N = N;
    inst.q = q;
    StarResult star = has_property_star(N, f, p);
    inst.star = star.star;
    Triple t = make_triple(N, p);
    if (star.m1_index) inst.m1 = t.parts[*star.m1_index];
    inst.index.N = N;
    inst.index.Y = compute_Y(N, p, star.star ? YMode::Star : YMode::General);
    IndexValidation v = validate_index_set(I, N, inst.index.Y);
    if (!v.ok) throw DomainError("index set fails condition " + std::to_string(v.violated) + ": " + v.detail);
    inst.index.I = std::move(I);

    inst.field = build_field(p, static_cast<u32>(f * s), opts);
    if (t.parts.empty()) {
        inst.A = 0;
    } else if (star.star) {
        FqPtr small = s == 1 ? inst.field : build_field(p, static_cast<u32>(f), opts);
        SignData sd = sign_constants(*small, N);
        u64 c = s == 1 ? 1 : subfield_log_scale(*small, *inst.field);
        inst.A = mulmod(c % t.m, sd.A, t.m);
    } else {
        throw DomainError("sign constants need the subproduct property");
    }
    return inst;
}

std::vector<u64> dual_index(const ShdsInstance& inst) {
    u64 N = inst.N;
    u64 shift = mulmod(2 * inst.A % N, inst.s % N, N);
    std::vector<u64> out;
    for (u64 i : inst.index.I) out.push_back((shift + N - i % N) % N);
    std::sort(out.begin(), out.end());
    return out;
}

CharacterReport verify_character_values(const ShdsInstance& inst) {
    const Fq& F = *inst.field;
    const u64 N = inst.N, p = inst.p;
    CharacterReport rep;
    CountMatrix cm = count_matrix(F, N);
    CycElt G = gauss_sum(F, cm, static_cast<i64>(N / 2)).value;
    CycElt total(p);
    rep.ok = true;
    for (u64 a = 0; a < N; ++a) {
        std::vector<i64> n(p, 0);
        for (u64 t = 0; t < p; ++t)
            for (u64 i : inst.index.I) n[t] += cm.c[t * N + (i + a) % N];
        CycElt psi = CycElt::from_exponent_sums(p, n);
        total = total + psi;
        rep.values.push_back(psi);
        CycElt twice = embed(mpz_class(2) * psi + CycElt::from_int(p, 1), p * N);
        if (twice == G) {
            rep.plus_set.push_back(a);
        } else if (twice != -G) {
            rep.ok = false;
        }
    }
    mpz_class orbit = (F.q - 1) / N, size = (F.q - 1) / 2;
    rep.completeness = orbit * total == CycElt::from_int(p, -size);
    rep.dual_matches = rep.ok && rep.plus_set == dual_index(inst);

    std::vector<char> memb = membership(F, N, inst.index.I);
    rep.skew = true;
    for (u32 x = 1; x < F.q && rep.skew; ++x)
        if (memb[x] == memb[F.sub(0, x)]) rep.skew = false;

    std::set<u64> Iset(inst.index.I.begin(), inst.index.I.end());
    rep.square_scaling = true;
    for (u32 c = 1; c < p && rep.square_scaling; ++c) {
        u64 d = F.dlog(F.mul(c, c)) % N;
        for (u64 i : inst.index.I)
            if (!Iset.count((i + d) % N)) rep.square_scaling = false;
    }
    return rep;
}

BruteForceResult brute_force_check(const ShdsInstance& inst) {
    const Fq& F = *inst.field;
    if (F.q > 20000) throw ResourceError("brute-force difference count limited to q <= 20000");
    std::vector<char> memb = membership(F, inst.N, inst.index.I);
    std::vector<u32> D = elements_of(memb);
    std::vector<u64> cnt(F.q, 0);
    for (u32 x : D)
        for (u32 y : D)
            if (x != y) ++cnt[F.sub(x, y)];
    BruteForceResult r;
    r.lambda = cnt[1];
    r.is_difference_set = std::all_of(cnt.begin() + 1, cnt.end(), [&](u64 c) { return c == r.lambda; });
    return r;
}

InvariantReport invariant_n_a(const ShdsInstance& inst, u64 a, std::optional<u64> threshold, unsigned threads) {
    const Fq& F = *inst.field;
    a %= inst.p;
    if (a <= 1) throw DomainError("a must lie in F_p outside {0, 1}");
    std::vector<char> memb = membership(F, inst.N, inst.index.I);
    std::vector<u32> D = elements_of(memb);
    std::vector<u64> vals(inst.N, 0);
    std::vector<char> computed(inst.N, 0);
    std::atomic<u64> next{0};
    std::atomic<bool> stop{false};
    std::mutex mu;
    std::set<u64> seen;
    auto work = [&] {
        for (u64 k; !stop && (k = next.fetch_add(1)) < inst.N;) {
            u32 x = F.element(k);
            u64 v = triple_value(F, memb, D, x, F.scalar(static_cast<u32>(a), x));
            std::lock_guard<std::mutex> lock(mu);
            vals[k] = v;
            computed[k] = 1;
            seen.insert(v);
            if (threshold && seen.size() >= *threshold) stop = true;
        }
    };
    unsigned nt = std::min<u64>(thread_count(threads), inst.N);
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < nt; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    InvariantReport rep;
    rep.a = a;
    rep.exhaustive = std::all_of(computed.begin(), computed.end(), [](char c) { return c != 0; });
    rep.values.assign(seen.begin(), seen.end());
    rep.distinct_values_found = rep.values.size();
    return rep;
}

InvariantReport invariant_n_a_literal(const ShdsInstance& inst, u64 a) {
    const Fq& F = *inst.field;
    if (F.q > 20000) throw ResourceError("literal invariant scan limited to q <= 20000");
    a %= inst.p;
    if (a <= 1) throw DomainError("a must lie in F_p outside {0, 1}");
    std::vector<char> memb = membership(F, inst.N, inst.index.I);
    std::vector<u32> D = elements_of(memb);
    std::set<u64> seen;
    for (u32 x = 1; x < F.q; ++x) seen.insert(triple_value(F, memb, D, x, F.scalar(static_cast<u32>(a), x)));
    InvariantReport rep;
    rep.a = a;
    rep.exhaustive = true;
    rep.values.assign(seen.begin(), seen.end());
    rep.distinct_values_found = rep.values.size();
    return rep;
}

FlatPolyResult flat_poly_search(u64 p1, u64 p2, bool relaxed, u64 budget) {
    if (p1 == p2 || p1 < 3 || p2 < 3 || !is_prime(p1) || !is_prime(p2))
        throw DomainError("p1 and p2 must be distinct odd primes");
    const u64 m = p1 * p2;
    if (m >= 64 || (1ULL << m) > budget) throw ResourceError("flat polynomial search exceeds budget");
    FlatPolyResult res;
    res.p1 = p1;
    res.p2 = p2;
    res.relaxed = relaxed;

    // zeta_{2p}^r = (-1)^r zeta_p^{r(p+1)/2}; with a lift bit b_r the sign is (-1)^{r + b_r}.
    std::vector<i64> c1(p1, 0), c2(p2, 0);
    std::vector<int> sign(m);
    for (u64 r = 0; r < m; ++r) {
        sign[r] = r % 2 == 0 ? 1 : -1;
        c1[r * ((p1 + 1) / 2) % p1] += sign[r];
        c2[r * ((p2 + 1) / 2) % p2] += sign[r];
    }
    auto flat = [](const std::vector<i64>& c) { return std::all_of(c.begin(), c.end(), [&](i64 x) { return x == c[0]; }); };
    u64 bits = 0;
    const u64 total = 1ULL << m;
    for (u64 step = 0; step < total; ++step) {
        if (step > 0) {
            u64 r = static_cast<u64>(std::countr_zero(step));
            bits ^= 1ULL << r;
            c1[r * ((p1 + 1) / 2) % p1] -= 2 * sign[r];
            c2[r * ((p2 + 1) / 2) % p2] -= 2 * sign[r];
            sign[r] = -sign[r];
        }
        ++res.searched;
        if (!relaxed && !(flat(c1) && flat(c2))) continue;
        std::vector<i64> a(m, 0);
        for (u64 r = 0; r < m; ++r) a[r * ((m + 1) / 2) % m] += sign[r];
        if (CycElt::from_exponent_sums(m, a).is_zero()) continue;
        std::vector<u64> w;
        for (u64 r = 0; r < m; ++r) w.push_back(r + ((bits >> r) & 1 ? m : 0));
        std::sort(w.begin(), w.end());
        res.witness = std::move(w);
        break;
    }
    return res;
}

}  // namespace pg

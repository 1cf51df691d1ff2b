#include "purity.hpp"

#include <algorithm>
#include <array>

#include "characters.hpp"
#include "errors.hpp"

namespace pg {

namespace {

constexpr std::array<const char*, 14> kLabelNames = {
    "SemiPrimitive", "P2",           "Index2",         "Index4_case1",    "Index4_case2",
    "Index6",        "Index8_case1", "Index8_case2",   "Index8_case3i",   "Index8_case3ii",
    "Index8_case3iii", "StarClass2", "Exceptional",    "NotPure"};

bool in_group(i64 x, u64 p, u64 n) {
    if (n == 1) return true;
    u64 r = static_cast<u64>(mod(x, static_cast<i64>(n)));
    if (gcd(r, n) != 1) return false;
    return in_subgroup(r, p % n, n);
}

bool quartic_residue(u64 a, u64 prime) {
    if ((prime - 1) % 4 != 0) return false;
    return powmod(a % prime, (prime - 1) / 4, prime) == 1;
}

// Geometric sum 1 + p + ... + p^{f-1} mod n.
u64 geometric_mod(u64 p, u64 f, u64 n) {
    if (n == 1) return 0;
    u64 s = 0, x = 1 % n;
    for (u64 i = 0; i < f; ++i) {
        s = (s + x) % n;
        x = mulmod(x, p % n, n);
    }
    return s;
}

}  // namespace

const char* label_name(Label l) { return kLabelNames[static_cast<std::size_t>(l)]; }

const char* star_class_name(StarClass c) { return c == StarClass::Class1 ? "Class1" : "Class2"; }

std::optional<Label> parse_label(const std::string& s) {
    for (std::size_t i = 0; i < kLabelNames.size(); ++i)
        if (s == kLabelNames[i]) return static_cast<Label>(i);
    return std::nullopt;
}

Triple make_triple(u64 N, u64 p) {
    if (N == 0) throw DomainError("N must be positive");
    if (N != 1 && gcd(p % N, N) != 1) throw DomainError("p must be prime to N");
    Triple t;
    t.N = N;
    t.p = p % N;
    t.f = mult_order(t.p, N);
    t.m = N % 2 == 0 ? N / 2 : N;
    for (auto [q, e] : factor64(N)) {
        if (q == 2) continue;
        u64 part = ipow(q, e);
        t.primes.push_back(q);
        t.parts.push_back(part);
        t.orders.push_back(mult_order(t.p % part, part));
    }
    return t;
}

bool stickelberger_pure(u64 N, u64 f, u64 p) {
    if (N == 0) throw DomainError("N must be positive");
    if (N != 1 && gcd(p % N, N) != 1) throw DomainError("p must be prime to N");
    u64 pr = p % N;
    u64 order = mult_order(pr, N);
    if (f == 0 || f % order != 0) throw DomainError("f must be a multiple of the order of p modulo N");
    f = order;
    if ((f * N) % 2 != 0) return false;
    if (N > (1ULL << 31)) throw ResourceError("digit scan limited to N < 2^31");
    const u64 target = f * N / 2;
    std::vector<bool> seen(N, false);
    for (u64 t = 1; t < N; ++t) {
        if (seen[t] || gcd(t, N) != 1) continue;
        u64 sum = 0, x = t;
        for (u64 i = 0; i < f; ++i) {
            seen[x] = true;
            sum += x;
            x = mulmod(x, pr, N);
        }
        if (sum != target) return false;
        u64 y = N - t;
        for (u64 i = 0; i < f; ++i) {
            seen[y] = true;
            y = mulmod(y, pr, N);
        }
    }
    return true;
}

bool aoki_pure(u64 N, u64 p) {
    if (N < 2) throw DomainError("aoki_pure needs N >= 2");
    if (!qc_minus(N, p).empty()) return false;
    std::vector<u64> primes;
    for (auto [q, e] : factor64(N)) primes.push_back(q);
    for (const auto& chi : d_minus(N, p)) {
        u64 cond = conductor(chi);
        bool ok = false;
        for (u64 l : primes) {
            if (cond % l == 0) continue;
            if (evaluate_primitive(chi, static_cast<i64>(l)).is_one()) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

bool in_P2(u64 N, u64 p) {
    if (N % 4 != 2) throw DomainError("in_P2 needs 2 || N");
    u64 m = N / 2;
    if (m != 1 && gcd(p % m, m) != 1) throw DomainError("p must be prime to N");
    return in_group(2, p, m);
}

bool semiprimitive(u64 N, u64 p) {
    if (N != 1 && gcd(p % N, N) != 1) throw DomainError("p must be prime to N");
    return in_group(-1, p, N);
}

std::optional<int> evans_sufficient(u64 c, u64 d, u64 p) {
    if (c == 0 || d == 0) throw DomainError("c and d must be positive");
    if (gcd(c, d) != 1) throw DomainError("c and d must be coprime");
    u64 m = c * d;
    if (m != 1 && gcd(p % m, m) != 1) throw DomainError("p must be prime to cd");
    u64 oc = mult_order(p % c, c), od = mult_order(p % d, d);
    if (gcd(oc, od) != 1) return std::nullopt;

    auto prime_in = [&](u64 x, u64 y) {
        for (auto [l, e] : factor64(x))
            if (in_group(static_cast<i64>(l), p, y)) return true;
        return false;
    };
    auto half_index = [&](u64 x) { return 2 * mult_order(p % x, x) == euler_phi(x); };

    if (oc == euler_phi(c) && prime_in(c, d)) return 1;

    auto cond2 = [&](u64 x, u64 y) { return !in_group(-1, p, x) && half_index(x) && prime_in(x, y); };
    if (cond2(c, d) && cond2(d, c)) return 2;

    if (m % 4 == 2) {
        auto cond3 = [&](u64 x, u64 y) {
            return !in_group(static_cast<i64>(2 + m / 2), p, x) && half_index(x) &&
                   (in_group(-1, p, y) || prime_in(x, y));
        };
        if (cond3(c, d) && cond3(d, c)) return 3;
    }
    return std::nullopt;
}

StarResult has_property_star(u64 N, u64 f, u64 p) {
    StarResult res;
    if (!stickelberger_pure(N, f, p)) return res;
    Triple t = make_triple(N, p);
    std::size_t r = t.parts.size();
    if (r == 0) {
        res.star = true;
        res.star_class = StarClass::Class1;
        return res;
    }
    std::vector<bool> two_in(r);
    bool all = true;
    for (std::size_t i = 0; i < r; ++i) {
        two_in[i] = in_group(2, t.p, t.parts[i]);
        all = all && two_in[i];
    }
    for (std::size_t c = 0; c < r; ++c) {
        if (!two_in[c]) continue;
        bool ok = true;
        std::vector<std::size_t> others;
        for (std::size_t i = 0; i < r; ++i)
            if (i != c) others.push_back(i);
        for (u64 mask = 0; ok && mask < (1ULL << others.size()); ++mask) {
            u64 sub = t.parts[c];
            for (std::size_t k = 0; k < others.size(); ++k)
                if (mask >> k & 1) sub *= t.parts[others[k]];
            u64 n = 2 * sub;
            ok = stickelberger_pure(n, mult_order(t.p % n, n), t.p);
        }
        if (ok) {
            res.star = true;
            res.m1_index = c;
            res.star_class = all ? StarClass::Class1 : StarClass::Class2;
            return res;
        }
    }
    return res;
}

std::optional<std::size_t> existmany_witness(u64 N, u64 f, u64 p) {
    Triple t = make_triple(N, p);
    if (t.f != f) throw DomainError("f must equal the order of p modulo N");
    if (N % 4 != 2) return std::nullopt;
    for (u64 fi : t.orders)
        if (fi % 2 == 0) return std::nullopt;
    for (std::size_t c = 0; c < t.parts.size(); ++c) {
        bool ok = true;
        for (std::size_t i = 0; i < t.parts.size(); ++i)
            if (i != c && gcd(t.orders[c], t.orders[i]) != 1) ok = false;
        if (!ok) continue;
        u64 m1 = t.parts[c], rest = t.m / m1;
        if (euler_phi(m1) != 2 * t.orders[c]) continue;
        if (!in_group(2, t.p, m1)) continue;
        if (!in_group(-2, t.p, rest)) continue;
        if (!in_group(static_cast<i64>(t.primes[c]), t.p, rest)) continue;
        return c;
    }
    return std::nullopt;
}

bool existmany_sufficient(u64 N, u64 f, u64 p) { return existmany_witness(N, f, p).has_value(); }

bool existmany_congruence_form(u64 N, u64 f, u64 p) {
    Triple t = make_triple(N, p);
    if (t.f != f) throw DomainError("f must equal the order of p modulo N");
    if (N % 4 != 2 || t.parts.empty()) return false;
    std::size_t r = t.parts.size();
    for (std::size_t i = 0; i < r; ++i)
        if (2 * t.orders[i] != euler_phi(t.parts[i])) return false;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
            if (gcd(t.orders[i], t.orders[j]) != 1) return false;
    for (std::size_t c = 0; c < r; ++c) {
        if (t.primes[c] % 8 != 7) continue;
        bool ok = true;
        for (std::size_t i = 0; i < r && ok; ++i) {
            if (i == c) continue;
            ok = t.primes[i] % 8 == 3 && legendre(static_cast<i64>(t.primes[c]), t.primes[i]) == 1;
        }
        if (ok) return true;
    }
    return false;
}

std::optional<Label> classify_small_index(u64 N, u64 p) {
    if (N % 4 != 2) return std::nullopt;
    Triple t = make_triple(N, p);
    if (t.f % 2 == 0) return std::nullopt;
    u64 idx = euler_phi(N) / t.f;
    std::size_t r = t.parts.size();
    const auto& P = t.primes;
    auto qr = [](u64 a, u64 prime) { return legendre(static_cast<i64>(a), prime) == 1; };
    auto coprime_orders = [&] {
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j)
                if (gcd(t.orders[i], t.orders[j]) != 1) return false;
        return true;
    };
    auto local_index = [&](std::size_t i) { return euler_phi(t.parts[i]) / t.orders[i]; };

    std::optional<Label> out;
    switch (idx) {
        case 2:
            if (r == 1 && P[0] % 8 == 7) out = Label::Index2;
            break;
        case 6:
            if (r == 1 && P[0] % 24 == 7 && repr_a2_27b2(P[0])) out = Label::Index6;
            break;
        case 4:
            if (r == 2 && coprime_orders() && local_index(0) == 2 && local_index(1) == 2) {
                if (P[0] % 8 == 7 && P[1] % 8 == 7) {
                    out = Label::Index4_case1;
                } else {
                    for (int k = 0; k < 2 && !out; ++k) {
                        u64 a = P[k], b = P[1 - k];
                        if (a % 8 == 7 && b % 4 == 3 && qr(a, b)) out = Label::Index4_case2;
                    }
                }
            }
            break;
        case 8:
            if (r == 1) {
                if (repr_a2_64b2_odd(P[0])) out = Label::Index8_case1;
            } else if (r == 2 && coprime_orders()) {
                for (int k = 0; k < 2 && !out; ++k) {
                    std::size_t i1 = k, i2 = 1 - k;
                    u64 a = P[i1], b = P[i2];
                    if (local_index(i1) == 4 && local_index(i2) == 2 && a % 8 == 5 && b % 8 == 3 && qr(a, b) &&
                        quartic_residue(b, a))
                        out = Label::Index8_case2;
                }
            } else if (r == 3 && coprime_orders() && local_index(0) == 2 && local_index(1) == 2 &&
                       local_index(2) == 2) {
                if (P[0] % 8 == 7 && P[1] % 8 == 7 && P[2] % 8 == 7) {
                    out = Label::Index8_case3i;
                    break;
                }
                for (std::size_t i1 = 0; i1 < 3 && !out; ++i1) {
                    if (P[i1] % 8 != 7) continue;
                    std::size_t i2 = (i1 + 1) % 3, i3 = (i1 + 2) % 3;
                    if (P[i2] % 8 != 3 || P[i3] % 8 != 3) continue;
                    if (qr(P[i1], P[i2]) && qr(P[i1], P[i3])) {
                        out = Label::Index8_case3ii;
                    } else if ((qr(P[i1], P[i2]) && qr(P[i2], P[i3])) || (qr(P[i1], P[i3]) && qr(P[i3], P[i2]))) {
                        out = Label::Index8_case3iii;
                    }
                }
            }
            break;
        default:
            return std::nullopt;
    }
    bool pure = stickelberger_pure(N, t.f, t.p);
    if (out && !pure) throw InternalError("small-index characterization matched a non-pure triple");
    if (!out && pure) throw InternalError("pure small-index triple matched no characterization");
    return out;
}

u64 canonical_pbar(u64 N, u64 p) {
    if (N == 1) return 0;
    u64 pr = p % N;
    u64 f = mult_order(pr, N);
    u64 best = pr, x = pr;
    for (u64 i = 1; i <= f - 1; ++i) {
        if (gcd(i, f) == 1) best = std::min(best, x);
        x = mulmod(x, pr, N);
    }
    return best;
}

PurityRecord purity_record(u64 N, u64 p) {
    PurityRecord rec;
    rec.triple = make_triple(N, p);
    const Triple& t = rec.triple;
    rec.p_bar = canonical_pbar(N, p);
    rec.stickelberger = stickelberger_pure(N, t.f, t.p);
    rec.aoki = N >= 2 ? aoki_pure(N, t.p) : false;
    if (rec.stickelberger != rec.aoki) throw InternalError("purity oracles disagree");
    rec.pure = rec.stickelberger;
    if (!rec.pure) {
        rec.labels.push_back(Label::NotPure);
        return rec;
    }
    if (t.f % 2 == 1 && N > 2) {
        if (N % 4 != 2) throw InternalError("odd-degree pure triple with 4 | N");
        if (geometric_mod(t.p, t.f, t.m) != 0) throw InternalError("odd-degree pure triple violates m | (p^f-1)/(p-1)");
    }
    StarResult star = has_property_star(N, t.f, t.p);
    rec.star = star.star;
    rec.star_class = star.star_class;

    if (semiprimitive(N, t.p)) rec.labels.push_back(Label::SemiPrimitive);
    if (N % 4 == 2 && t.f % 2 == 1) {
        if (in_P2(N, t.p)) rec.labels.push_back(Label::P2);
        if (auto l = classify_small_index(N, t.p)) rec.labels.push_back(*l);
    }
    if (rec.labels.empty()) rec.labels.push_back(Label::Exceptional);
    if (star.star && star.star_class == StarClass::Class2) rec.labels.push_back(Label::StarClass2);
    rec.label = rec.labels.front();
    if (rec.label == Label::P2 && !rec.star) throw InternalError("P2 triple without the subproduct property");
    return rec;
}

}  // namespace pg

#include "classify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "errors.hpp"

namespace pg {

namespace {

struct Part {
    u64 prime;
    u64 value;  // prime power
};

std::vector<Part> odd_parts(u64 m) {
    std::vector<Part> out;
    for (auto [q, e] : factor64(m)) out.push_back({q, ipow(q, e)});
    return out;
}

bool divides_pow_minus_one(u64 base, u64 e, u64 n) { return n == 1 || powmod(base % n, e, n) == 1; }

void check_f(u64 f) {
    if (f % 2 == 0 || f == 0) throw DomainError("f must be odd and positive");
    if (f > 23) throw DomainError("f above 23 is not supported");
}

// Elements of exact order f in (Z/N)^x for N = 2m, m odd.
std::vector<u64> elements_of_order(u64 N, u64 f) {
    u64 m = N / 2;
    std::vector<std::vector<u64>> comp;  // per part, residues mod the part of order dividing f
    std::vector<u64> mods;
    for (auto [q, e] : factor64(m)) {
        u64 pe = ipow(q, e), phi = (q - 1) * (pe / q);
        u64 g = primitive_root_prime_power(q, e);
        u64 d = gcd(f, phi);
        u64 base = powmod(g, phi / d, pe);
        std::vector<u64> xs;
        u64 x = 1;
        for (u64 k = 0; k < d; ++k) {
            xs.push_back(x);
            x = mulmod(x, base, pe);
        }
        comp.push_back(std::move(xs));
        mods.push_back(pe);
    }
    std::vector<u64> acc = {0};
    u64 mod_acc = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
        std::vector<u64> next;
        for (u64 a : acc)
            for (u64 b : comp[i]) next.push_back(crt_pair(a, mod_acc, b, mods[i]));
        acc = std::move(next);
        mod_acc *= mods[i];
    }
    std::vector<u64> out;
    for (u64 y : acc) {
        u64 x = m == 1 ? 1 : (y % 2 == 1 ? y : y + m);
        if (mult_order(x, N) == f) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

u64 subgroup_sum_mod(u64 p, u64 f, u64 m) {
    u64 s = 0, x = 1 % m;
    for (u64 i = 0; i < f; ++i) {
        s = (s + x) % m;
        x = mulmod(x, p, m);
    }
    return s;
}

// Digit-sum condition on a fixed sample of multipliers t; a necessary condition only.
bool sampled_digit_sums_ok(u64 N, u64 f, u64 p) {
    const u64 target = f * N / 2;
    std::mt19937_64 rng(N ^ (p << 20));
    for (int k = 0; k < 96; ++k) {
        u64 t = k < 32 ? static_cast<u64>(2 * k + 1) : rng() % N;
        if (t == 0 || gcd(t, N) != 1) continue;
        u64 sum = 0, x = t % N;
        for (u64 i = 0; i < f; ++i) {
            sum += x;
            x = mulmod(x, p, N);
        }
        if (sum != target) return false;
    }
    return true;
}

TableRow make_row(u64 N, u64 f, u64 pbar, std::vector<std::string> prov) {
    TableRow row;
    row.N = N;
    row.f = f;
    row.p_bar = pbar;
    row.label = table_label(N, pbar);
    row.star_class = has_property_star(N, f, pbar).star_class;
    row.provenance = std::move(prov);
    return row;
}

}  // namespace

Label table_label(u64 N, u64 p) {
    if (auto l = classify_small_index(N, p)) return *l;
    if (in_P2(N, p)) return Label::P2;
    return Label::Exceptional;
}

std::vector<u64> ao1_candidates(u64 f) {
    check_f(f);
    u64 two2f = (1ULL << (2 * f)) - 1;
    std::map<u64, std::set<unsigned>> allowed_a, allowed_b;
    for (auto [q, e] : factor64(two2f)) {
        if (q == 2) continue;
        for (unsigned u = 1; u <= e; ++u) allowed_a[q].insert(u);
    }
    for (u64 d : divisors(4 * f)) {
        u64 q = d + 1;
        if (q < 3 || !is_prime(q)) continue;
        u64 pe = q;
        for (unsigned u = 1;; ++u) {
            if ((4 * f) % ((q - 1) * (pe / q)) != 0) break;
            allowed_b[q].insert(u);
            pe *= q;
        }
    }
    std::vector<u64> primes;
    for (auto& [q, s] : allowed_a) primes.push_back(q);
    for (auto& [q, s] : allowed_b)
        if (!allowed_a.count(q)) primes.push_back(q);
    std::sort(primes.begin(), primes.end());

    std::set<u64> out;
    // Choose for each prime: absent, an A-exponent, or a B-only exponent.
    struct Choice {
        u64 value;
        bool in_a;
    };
    std::vector<std::vector<Choice>> options;
    for (u64 q : primes) {
        std::vector<Choice> opts;
        std::set<unsigned> us;
        if (allowed_a.count(q)) us.insert(allowed_a[q].begin(), allowed_a[q].end());
        if (allowed_b.count(q)) us.insert(allowed_b[q].begin(), allowed_b[q].end());
        for (unsigned u : us) opts.push_back({ipow(q, u), allowed_a.count(q) && allowed_a[q].count(u)});
        options.push_back(std::move(opts));
    }
    std::vector<std::size_t> pick(primes.size(), 0);  // 0 = absent, k = options[k-1]
    while (true) {
        u64 m = 1;
        std::size_t r = 0;
        bool all_a = true;
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (pick[i] == 0) continue;
            const Choice& c = options[i][pick[i] - 1];
            m *= c.value;
            ++r;
            all_a = all_a && c.in_a;
        }
        if (m > 1 && (r % 2 == 0 || all_a)) out.insert(2 * m);
        std::size_t i = 0;
        for (; i < primes.size(); ++i) {
            if (++pick[i] <= options[i].size()) break;
            pick[i] = 0;
        }
        if (i == primes.size()) break;
    }
    return {out.begin(), out.end()};
}

PruneResult prune(u64 f, const std::vector<u64>& candidates) {
    check_f(f);
    u64 tf = (1ULL << f) - 1, t2f = (1ULL << (2 * f)) - 1;
    auto divides_2f = [&](u64 x) { return t2f % x == 0; };
    auto divides_f = [&](u64 x) { return tf % x == 0; };

    auto cross_order = [&](const std::vector<Part>& P) {
        for (std::size_t j = 0; j < P.size(); ++j) {
            if (divides_f(P[j].value)) continue;
            bool ok = false;
            for (std::size_t h = 0; h < P.size() && !ok; ++h)
                if (h != j && divides_pow_minus_one(P[h].prime, f, P[j].value)) ok = true;
            if (!ok) return false;
        }
        return true;
    };
    auto pair_bound = [&](const std::vector<Part>& P) {
        if (P.size() != 2) return true;
        for (int j = 0; j < 2; ++j) {
            const Part& a = P[j];
            const Part& b = P[1 - j];
            if (!divides_f(a.value) && divides_2f(b.value) && euler_phi(b.value) > 2 * f) return false;
        }
        return true;
    };
    auto even_totient_bound = [&](const std::vector<Part>& P) {
        if (P.size() % 2 != 0) return true;
        bool some_out = false;
        for (const Part& x : P) some_out = some_out || !divides_2f(x.value);
        if (!some_out) return true;
        for (const Part& x : P)
            if (divides_2f(x.value) && euler_phi(x.value) > 2 * f) return false;
        return true;
    };
    auto even_cross_order = [&](const std::vector<Part>& P) {
        if (P.size() % 2 != 0) return true;
        for (std::size_t j = 0; j < P.size(); ++j) {
            if (divides_2f(P[j].value)) continue;
            for (std::size_t k = 0; k < P.size(); ++k)
                if (k != j && !divides_pow_minus_one(P[j].prime, 2 * f, P[k].value)) return false;
        }
        return true;
    };
    auto odd_mixed = [&](const std::vector<Part>& P) {
        if (P.size() % 2 != 1) return true;
        for (std::size_t j = 0; j < P.size(); ++j) {
            if (divides_f(P[j].value)) continue;
            for (std::size_t h = 0; h < P.size(); ++h) {
                if (h == j || !divides_f(P[h].value)) continue;
                if (euler_phi(P[h].value) <= 2 * f) continue;
                bool ok = divides_pow_minus_one(P[j].prime, 4 * f, P[h].value);
                for (std::size_t k = 0; k < P.size() && ok; ++k)
                    if (k != j && k != h && !divides_pow_minus_one(P[j].prime, 2 * f, P[k].value)) ok = false;
                if (!ok) return false;
            }
        }
        return true;
    };

    std::vector<std::function<bool(const std::vector<Part>&)>> tests = {cross_order, pair_bound, even_totient_bound,
                                                                        even_cross_order, odd_mixed};
    PruneResult res;
    std::vector<u64> current = candidates;
    for (std::size_t s = 0; s < tests.size(); ++s) {
        PruneStep step;
        step.name = kPruneStepNames[s];
        for (u64 N : current) {
            if (tests[s](odd_parts(N / 2)))
                step.survivors.push_back(N);
            else
                step.eliminated.push_back(N);
        }
        current = step.survivors;
        res.steps.push_back(std::move(step));
    }
    res.survivors = current;
    return res;
}

ClassifyResult enumerate_Pstar(u64 f) {
    check_f(f);
    ClassifyResult res;
    res.f = f;
    static const std::set<u64> published = {3, 5, 7, 9, 11, 13, 17, 19, 23};
    res.published = published.count(f) > 0;
    res.candidates = ao1_candidates(f);
    res.pruning = prune(f, res.candidates);
    std::vector<std::string> prov = {"candidate"};
    for (const auto& s : kPruneStepNames) prov.push_back(s);
    prov.push_back("digit_criterion");
    for (u64 N : res.pruning.survivors) {
        std::set<u64> seen;
        for (u64 x : elements_of_order(N, f)) {
            if (subgroup_sum_mod(x, f, N / 2) != 0 || !sampled_digit_sums_ok(N, f, x)) continue;
            u64 pbar = canonical_pbar(N, x);
            if (!seen.insert(pbar).second) continue;
            if (semiprimitive(N, pbar)) continue;
            if (!stickelberger_pure(N, f, pbar)) continue;
            res.rows.push_back(make_row(N, f, pbar, prov));
        }
    }
    std::sort(res.rows.begin(), res.rows.end(),
              [](const TableRow& a, const TableRow& b) { return std::tie(a.N, a.p_bar) < std::tie(b.N, b.p_bar); });
    return res;
}

std::vector<TableRow> scan_tables(u64 N_max, const ScanOptions& opts) {
    if (N_max > 5000) throw DomainError("scan limited to N <= 5000");
    std::vector<u64> Ns;
    for (u64 N = 6; N <= N_max; N += 4) Ns.push_back(N);
    std::vector<std::vector<TableRow>> per(Ns.size());
    std::atomic<std::size_t> next{0};
    const std::vector<std::string> prov = {"order_divides_4f", "subgroup_sum", "digit_criterion"};

    auto work = [&] {
        for (std::size_t idx; (idx = next.fetch_add(1)) < Ns.size();) {
            u64 N = Ns[idx], m = N / 2;
            Factors64 lam_fac;
            u64 lam = 1;
            for (auto [q, e] : factor64(m)) lam = lcm(lam, (q - 1) * ipow(q, e - 1));
            lam_fac = factor64(lam);
            std::vector<char> done(N, 0);
            for (u64 p = 1; p < N; p += 2) {
                if (done[p] || gcd(p, N) != 1) continue;
                u64 f = mult_order_in(p, N, lam, lam_fac);
                if (f % 2 == 0) continue;
                if (powmod(2, 4 * f, m) != 1 % m) continue;
                if (subgroup_sum_mod(p, f, m) != 0) continue;
                u64 x = p;
                for (u64 i = 1; i <= f; ++i) {
                    if (gcd(i, f) == 1) done[x] = 1;
                    x = mulmod(x, p, N);
                }
                if (!stickelberger_pure(N, f, p)) continue;
                per[idx].push_back(make_row(N, f, p, prov));
            }
        }
    };
    unsigned nt = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    std::vector<TableRow> out;
    for (auto& v : per)
        for (auto& r : v) out.push_back(std::move(r));
    return out;
}

}  // namespace pg

#include "gfield.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "errors.hpp"

namespace pg {

namespace {

using Poly = std::vector<u64>;  // low to high, coefficients in [0, p)

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a * b mod the monic modulus P (degree f); inputs have degree < f.
Poly mulmod_poly(const Poly& a, const Poly& b, const Poly& P, u64 p) {
    std::size_t f = P.size() - 1;
    if (a.empty() || b.empty()) return {};
    std::vector<u64> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!b[j]) continue;
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        }
    }
    for (std::size_t k = prod.size(); k-- > f;) {
        u64 c = prod[k];
        if (!c) continue;
        for (std::size_t i = 0; i < f; ++i) prod[k - f + i] = (prod[k - f + i] + (p - c) * P[i]) % p;
        prod[k] = 0;
    }
    prod.resize(std::min(prod.size(), f));
    trim(prod);
    return prod;
}

Poly powmod_poly(Poly a, u64 e, const Poly& P, u64 p) {
    Poly r{1};
    while (e) {
        if (e & 1) r = mulmod_poly(r, a, P, p);
        e >>= 1;
        if (e) a = mulmod_poly(a, a, P, p);
    }
    return r;
}

Poly poly_mod(Poly a, const Poly& b, u64 p) {
    trim(a);
    std::size_t db = b.size() - 1;
    u64 inv = mod_inverse(static_cast<i64>(b.back()), p);
    while (a.size() >= b.size()) {
        u64 c = a.back() * inv % p;
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + (p - c) * b[i] % p) % p;
        trim(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool is_irreducible(const Poly& P, u64 p) {
    std::size_t f = P.size() - 1;
    if (f == 1) return true;
    std::vector<Poly> frob(f + 1);
    frob[0] = {0, 1};
    for (std::size_t k = 1; k <= f; ++k) frob[k] = powmod_poly(frob[k - 1], p, P, p);
    Poly x{0, 1};
    if (frob[f] != x) return false;
    for (auto [r, e] : factor64(f)) {
        Poly d = frob[f / r];
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = (d[1] + p - 1) % p;
        trim(d);
        if (d.empty()) return false;
        if (poly_gcd(P, d, p).size() != 1) return false;
    }
    return true;
}

Poly decode(u64 enc, u64 p, std::size_t f) {
    Poly a(f, 0);
    for (std::size_t i = 0; i < f; ++i) {
        a[i] = enc % p;
        enc /= p;
    }
    trim(a);
    return a;
}

Poly find_modulus(u64 p, u32 f) {
    if (f == 1) return {0, 1};
    u64 count = ipow(p, f);
    for (u64 e = 0; e < count; ++e) {
        if (e % p == 0) continue;  // constant term zero means x divides P
        Poly P = decode(e, p, f);
        P.resize(f + 1, 0);
        P[f] = 1;
        if (is_irreducible(P, p)) return P;
    }
    throw InternalError("no irreducible polynomial found");
}

bool is_primitive(const Poly& a, const Poly& P, u64 p, u64 q, const Factors64& fac) {
    for (auto [r, e] : fac) {
        if (powmod_poly(a, (q - 1) / r, P, p) == Poly{1}) return false;
    }
    return true;
}

std::string cache_path(const std::string& dir, u64 p, u32 f) {
    return dir + "/field_" + std::to_string(p) + "_" + std::to_string(f) + ".bin";
}

constexpr char kMagic[4] = {'P', 'G', 'F', 'C'};
constexpr u32 kCacheVersion = 1;

bool load_cached(const std::string& dir, u64 p, u32 f, Poly& P, u64& omega) {
    std::ifstream in(cache_path(dir, p, f), std::ios::binary);
    if (!in) return false;
    char magic[4];
    u32 version, pp, ff;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&version), 4);
    in.read(reinterpret_cast<char*>(&pp), 4);
    in.read(reinterpret_cast<char*>(&ff), 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0 || version != kCacheVersion || pp != p || ff != f) return false;
    P.assign(f + 1, 0);
    for (u32 i = 0; i <= f; ++i) {
        u32 c;
        in.read(reinterpret_cast<char*>(&c), 4);
        P[i] = c;
    }
    u32 w;
    in.read(reinterpret_cast<char*>(&w), 4);
    omega = w;
    if (!in || P[f] != 1) return false;
    for (u64 c : P)
        if (c >= p) return false;
    return is_irreducible(P, p);
}

void store_cached(const std::string& dir, u64 p, u32 f, const Poly& P, u64 omega) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::string path = cache_path(dir, p, f);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) return;
        u32 version = kCacheVersion, pp = static_cast<u32>(p), ff = f;
        out.write(kMagic, 4);
        out.write(reinterpret_cast<const char*>(&version), 4);
        out.write(reinterpret_cast<const char*>(&pp), 4);
        out.write(reinterpret_cast<const char*>(&ff), 4);
        for (u32 i = 0; i <= f; ++i) {
            u32 c = static_cast<u32>(P[i]);
            out.write(reinterpret_cast<const char*>(&c), 4);
        }
        u32 w = static_cast<u32>(omega);
        out.write(reinterpret_cast<const char*>(&w), 4);
    }
    std::filesystem::rename(tmp, path, ec);
}

// Fills the tables; false if omega turns out not to be primitive.
bool fill_tables(Fq& F, const Poly& P, u64 omega) {
    u64 p = F.p, q = F.q;
    std::size_t f = F.f;
    Poly w = decode(omega, p, f);
    F.basis_trace.assign(f, 0);
    for (std::size_t i = 0; i < f; ++i) {
        Poly xi(i + 1, 0);
        xi[i] = 1;
        xi = poly_mod(xi, P, p);
        Poly y = xi;
        std::vector<u64> acc(f, 0);
        for (std::size_t j = 0; j < f; ++j) {
            for (std::size_t k = 0; k < y.size(); ++k) acc[k] = (acc[k] + y[k]) % p;
            y = powmod_poly(y, p, P, p);
        }
        for (std::size_t k = 1; k < f; ++k)
            if (acc[k] != 0) throw InternalError("trace of a basis element is not in the prime field");
        F.basis_trace[i] = static_cast<u32>(acc[0]);
    }
    F.exp_table.assign(q - 1, 0);
    F.log_table.assign(q, kNoLog);
    F.trace_log.assign(q - 1, 0);
    std::vector<u64> cur(f, 0), next(f + w.size(), 0);
    cur[0] = 1;
    for (u64 k = 0; k + 1 < q; ++k) {
        u64 enc = 0, tr = 0;
        for (std::size_t i = f; i-- > 0;) {
            enc = enc * p + cur[i];
            tr += cur[i] * F.basis_trace[i];
        }
        if (F.log_table[enc] != kNoLog) return false;
        F.exp_table[k] = static_cast<u32>(enc);
        F.log_table[enc] = static_cast<u32>(k);
        F.trace_log[k] = static_cast<u32>(tr % p);
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (!w[j]) continue;
            for (std::size_t i = 0; i < f; ++i) next[i + j] = (next[i + j] + cur[i] * w[j]) % p;
        }
        for (std::size_t t = next.size(); t-- > f;) {
            u64 c = next[t];
            if (!c) continue;
            for (std::size_t i = 0; i < f; ++i) next[t - f + i] = (next[t - f + i] + (p - c) * P[i]) % p;
            next[t] = 0;
        }
        std::copy(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(f), cur.begin());
    }
    return cur[0] == 1 && std::all_of(cur.begin() + 1, cur.end(), [](u64 c) { return c == 0; });
}

}  // namespace

std::string field_cache_dir() {
    const char* v = std::getenv("PUREGAUSS_FIELD_CACHE");
    return v ? std::string(v) : std::string();
}

FqPtr build_field(u64 p, u32 f, const FieldOptions& opts) {
    if (f == 0) throw DomainError("field degree must be positive");
    if (!is_prime(p)) throw DomainError("field characteristic must be prime");
    u64 q = 1;
    for (u32 i = 0; i < f; ++i) {
        if (__builtin_mul_overflow(q, p, &q) || q > opts.cap)
            throw ResourceError("field size p^f exceeds the cap " + std::to_string(opts.cap));
    }
    auto F = std::make_shared<Fq>();
    F->p = static_cast<u32>(p);
    F->f = f;
    F->q = static_cast<u32>(q);

    std::string dir = opts.use_cache ? field_cache_dir() : std::string();
    Poly P;
    u64 omega = 0;
    bool cached = !dir.empty() && load_cached(dir, p, f, P, omega) && omega > 0 && omega < q;
    if (cached && fill_tables(*F, P, omega)) {
        F->modulus.assign(P.begin(), P.end());
        F->omega = static_cast<u32>(omega);
        return F;
    }

    P = find_modulus(p, f);
    Factors64 fac = factor64(q - 1);
    omega = 0;
    for (u64 e = 1; e < q; ++e) {
        if (is_primitive(decode(e, p, f), P, p, q, fac)) {
            omega = e;
            break;
        }
    }
    if (omega == 0) throw InternalError("no primitive element found");
    if (!fill_tables(*F, P, omega)) throw InternalError("primitive element certification failed");
    F->modulus.assign(P.begin(), P.end());
    F->omega = static_cast<u32>(omega);
    if (!dir.empty()) store_cached(dir, p, f, P, omega);
    return F;
}

u32 Fq::add(u32 a, u32 b) const {
    u32 out = 0, scale = 1;
    for (u32 i = 0; i < f; ++i) {
        u32 d = (a % p + b % p) % p;
        out += d * scale;
        scale *= p;
        a /= p;
        b /= p;
    }
    return out;
}

u32 Fq::sub(u32 a, u32 b) const {
    u32 out = 0, scale = 1;
    for (u32 i = 0; i < f; ++i) {
        u32 d = (a % p + p - b % p) % p;
        out += d * scale;
        scale *= p;
        a /= p;
        b /= p;
    }
    return out;
}

u32 Fq::mul(u32 a, u32 b) const {
    if (a == 0 || b == 0) return 0;
    u64 k = static_cast<u64>(log_table[a]) + log_table[b];
    return exp_table[k % (q - 1)];
}

u32 Fq::scalar(u32 c, u32 a) const {
    c %= p;
    if (c == 0 || a == 0) return 0;
    return mul(c, a);  // constants encode as themselves
}

u32 Fq::frobenius(u32 a) const {
    if (a == 0) return 0;
    return exp_table[static_cast<u64>(log_table[a]) * p % (q - 1)];
}

std::vector<u32> zech_table(const Fq& F) {
    std::vector<u32> z(F.q - 1, kNoLog);
    for (u64 k = 0; k + 1 < F.q; ++k) {
        u32 e = F.exp_table[k];
        u32 d0 = e % F.p;
        u32 s = e - d0 + (d0 + 1) % F.p;
        z[k] = s == 0 ? kNoLog : F.log_table[s];
    }
    return z;
}

}  // namespace pg

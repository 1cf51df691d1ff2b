#include "cyclotomic.hpp"

#include <sstream>

#include "errors.hpp"

namespace pg {

namespace {

std::size_t degree_of(u64 n) { return cyclotomic_poly(n).size() - 1; }

// Long division by the monic Phi_n, top coefficient first.
std::vector<mpz_class> reduce(std::vector<mpz_class> v, u64 n) {
    const auto& phi = cyclotomic_poly(n);
    std::size_t d = phi.size() - 1;
    for (std::size_t k = v.size(); k-- > d;) {
        if (sgn(v[k]) == 0) continue;
        mpz_class c = v[k];
        std::size_t base = k - d;
        for (std::size_t i = 0; i < d; ++i) {
            if (phi[i] == 0) continue;
            if (phi[i] > 0)
                mpz_submul_ui(v[base + i].get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(phi[i]));
            else
                mpz_addmul_ui(v[base + i].get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(-phi[i]));
        }
        v[k] = 0;
    }
    v.resize(d);
    return v;
}

// Same reduction in machine integers; false on overflow.
bool reduce_small(std::vector<i64>& v, u64 n) {
    const auto& phi = cyclotomic_poly(n);
    std::size_t d = phi.size() - 1;
    for (std::size_t k = v.size(); k-- > d;) {
        i64 c = v[k];
        if (c == 0) continue;
        std::size_t base = k - d;
        for (std::size_t i = 0; i < d; ++i) {
            if (phi[i] == 0) continue;
            i64 t;
            if (__builtin_mul_overflow(c, phi[i], &t)) return false;
            if (__builtin_sub_overflow(v[base + i], t, &v[base + i])) return false;
        }
        v[k] = 0;
    }
    v.resize(d);
    return true;
}

void require_same(const CycElt& a, const CycElt& b) {
    if (a.conductor() != b.conductor()) throw DomainError("conductor mismatch; embed first");
}

}  // namespace

CycElt::CycElt(u64 n) : n_(n) {
    if (n == 0) throw DomainError("conductor must be positive");
    c_.assign(degree_of(n), 0);
}

CycElt CycElt::from_int(u64 n, const mpz_class& v) {
    CycElt r(n);
    r.c_[0] = v;
    return r;
}

CycElt CycElt::zeta_power(u64 n, i64 k) {
    std::vector<i64> a(n, 0);
    a[static_cast<std::size_t>(mod(k, static_cast<i64>(n)))] = 1;
    return from_exponent_sums(n, a);
}

CycElt CycElt::from_exponent_sums(u64 n, const std::vector<i64>& a) {
    if (a.size() != n) throw DomainError("exponent vector length must equal the conductor");
    std::vector<i64> v = a;
    if (reduce_small(v, n)) {
        CycElt r(n);
        for (std::size_t i = 0; i < v.size(); ++i) r.c_[i] = static_cast<long>(v[i]);
        return r;
    }
    std::vector<mpz_class> big(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) big[i] = static_cast<long>(a[i]);
    return from_exponent_sums(n, big);
}

CycElt CycElt::from_exponent_sums(u64 n, const std::vector<mpz_class>& a) {
    if (a.size() != n) throw DomainError("exponent vector length must equal the conductor");
    CycElt r(n);
    r.c_ = reduce(a, n);
    return r;
}

CycElt CycElt::from_coeffs(u64 n, std::vector<mpz_class> coeffs) {
    CycElt r(n);
    if (coeffs.size() > r.c_.size()) {
        r.c_ = reduce(std::move(coeffs), n);
    } else {
        coeffs.resize(r.c_.size());
        r.c_ = std::move(coeffs);
    }
    return r;
}

bool CycElt::is_zero() const {
    for (const auto& x : c_)
        if (sgn(x) != 0) return false;
    return true;
}

bool CycElt::is_integer() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

bool operator==(const CycElt& a, const CycElt& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

CycElt operator+(const CycElt& a, const CycElt& b) {
    require_same(a, b);
    CycElt r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
}

CycElt operator-(const CycElt& a, const CycElt& b) {
    require_same(a, b);
    CycElt r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
}

CycElt CycElt::operator-() const {
    CycElt r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycElt operator*(const mpz_class& k, const CycElt& a) {
    CycElt r = a;
    for (auto& x : r.c_) x *= k;
    return r;
}

CycElt operator*(const CycElt& a, const CycElt& b) {
    require_same(a, b);
    std::size_t d = a.c_.size();
    std::vector<mpz_class> prod(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (sgn(b.c_[j]) == 0) continue;
            mpz_addmul(prod[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        }
    }
    CycElt r(a.n_);
    r.c_ = reduce(std::move(prod), a.n_);
    return r;
}

CycElt zeta_power(u64 n, i64 k) { return CycElt::zeta_power(n, k); }
CycElt mul(const CycElt& a, const CycElt& b) { return a * b; }
CycElt add(const CycElt& a, const CycElt& b) { return a + b; }

CycElt embed(const CycElt& a, u64 target) {
    u64 n = a.conductor();
    if (target == 0 || target % n != 0) throw DomainError("embed: target conductor must be a multiple");
    if (target == n) return a;
    u64 step = target / n;
    std::vector<mpz_class> v(target);
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) v[k * step] = a.coeffs()[k];
    return CycElt::from_exponent_sums(target, v);
}

CycElt galois_apply(const CycElt& a, i64 t) {
    u64 n = a.conductor();
    u64 tt = static_cast<u64>(mod(t, static_cast<i64>(n)));
    if (gcd(tt, n) != 1 && n != 1) throw DomainError("galois_apply: exponent must be prime to the conductor");
    if (tt == 1 % n) return a;
    std::vector<mpz_class> v(n);
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
        if (sgn(a.coeffs()[k]) == 0) continue;
        v[mulmod(k, tt, n)] += a.coeffs()[k];
    }
    return CycElt::from_exponent_sums(n, v);
}

CycElt conj(const CycElt& a) {
    u64 n = a.conductor();
    return n <= 2 ? a : galois_apply(a, static_cast<i64>(n - 1));
}

CycElt pow(const CycElt& a, u64 e) {
    CycElt result = CycElt::from_int(a.conductor(), 1);
    CycElt base = a;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::string to_string(const CycElt& a) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
        const mpz_class& c = a.coeffs()[k];
        if (sgn(c) == 0) continue;
        mpz_class mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        if (k == 0) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << "*";
            os << "z";
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    if (first) os << "0";
    os << " (z = zeta_" << a.conductor() << ")";
    return os.str();
}

}  // namespace pg

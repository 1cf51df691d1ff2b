#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

#include "arith.hpp"

namespace pg {

// Element of Z[zeta_n] in the power basis 1, z, ..., z^{phi(n)-1}, reduced modulo Phi_n.
class CycElt {
public:
    CycElt() : CycElt(1) {}
    explicit CycElt(u64 n);  // zero

    static CycElt from_int(u64 n, const mpz_class& v);
    static CycElt zeta_power(u64 n, i64 k);
    // sum_k a[k] zeta_n^k for k in [0, n); a.size() must equal n.
    static CycElt from_exponent_sums(u64 n, const std::vector<i64>& a);
    static CycElt from_exponent_sums(u64 n, const std::vector<mpz_class>& a);
    static CycElt from_coeffs(u64 n, std::vector<mpz_class> coeffs);

    u64 conductor() const { return n_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_integer() const;  // lies in Z

    friend bool operator==(const CycElt& a, const CycElt& b);
    friend bool operator!=(const CycElt& a, const CycElt& b) { return !(a == b); }
    friend CycElt operator+(const CycElt& a, const CycElt& b);
    friend CycElt operator-(const CycElt& a, const CycElt& b);
    friend CycElt operator*(const CycElt& a, const CycElt& b);
    friend CycElt operator*(const mpz_class& k, const CycElt& a);
    CycElt operator-() const;

private:
    u64 n_;
    std::vector<mpz_class> c_;
};

CycElt zeta_power(u64 n, i64 k);
CycElt mul(const CycElt& a, const CycElt& b);
CycElt add(const CycElt& a, const CycElt& b);
CycElt embed(const CycElt& a, u64 target);
CycElt galois_apply(const CycElt& a, i64 t);
CycElt conj(const CycElt& a);
CycElt pow(const CycElt& a, u64 e);

// "c0 + c1*z + ... (z = zeta_n)"
std::string to_string(const CycElt& a);

}  // namespace pg

#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "gfield.hpp"

namespace pg {

// G_{p^f}(eta_N^j) with eta_N(omega) = zeta_N, as an element of Z[zeta_{pN}].
struct GaussSumValue {
    CycElt value;
    u64 p = 0, f = 0, N = 0;
    i64 j = 0;
};

// c[t * N + r] = #{k : Tr(omega^k) = t, k = r mod N}.
struct CountMatrix {
    u64 p = 0, N = 0;
    std::vector<u32> c;
};

CountMatrix count_matrix(const Fq& F, u64 N);

GaussSumValue gauss_sum(const Fq& F, u64 N, i64 j);
GaussSumValue gauss_sum(const Fq& F, const CountMatrix& cm, i64 j);

// Exponent k with epsilon = i^k, for G_{p^f}(eta_2) = epsilon p^{f/2}.
int quadratic_closed_form(u64 p, u64 f);

struct SemiPrimitiveSign {
    u64 s = 0;  // least s with p^s = -1 mod N
    u64 t = 0;  // f = 2st
    int sign = 1;
};
// G_{p^f}(eta_N) = sign * p^{f/2}; needs N > 2 and 2s | f.
SemiPrimitiveSign semiprimitive_closed_form(u64 p, u64 N, u64 f);

// c with iota(omega_F) = omega_B^{c (|B| - 1) / (|F| - 1)} for F a subfield of B.
u64 subfield_log_scale(const Fq& F, const Fq& B);

// Lift from F to F_{p^{fs}}: G(eta') == (-1)^{s-1} G(eta)^s.
bool dh_lift_check(const Fq& F, u64 N, i64 j, u64 s, const FieldOptions& opts = {});
// Product formula for odd l with eta = chi^{(L/N) j}, theta = chi^{L/l}, chi(omega) = zeta_L, L = lcm(N, l).
bool dh_product_check(const Fq& F, u64 N, i64 j, u64 l);

// G^{2g} == p^{fg}, g = gcd(N, p-1), evaluated in Z[zeta_{pN}].
bool is_pure_direct(const GaussSumValue& G);

// Exact decision of the same question through reductions modulo a prime l = 1 mod pN, l > 2q.
bool is_pure_modular(const Fq& F, u64 N);
// Same decision for every divisor N >= 2 of q - 1, sharing one field pass.
std::vector<std::pair<u64, bool>> pure_modular_all_divisors(const Fq& F);

struct SignData {
    std::vector<u64> parts;  // m_1 first, then the rest ascending
    std::vector<u64> s;      // s_i mod m_i
    u64 m = 0;
    u64 A = 0;                   // mod m
    u64 epsilon_order_bound = 0; // 2 gcd(N, p - 1)
};

// Requires (N, f, p) pure with the subproduct property and F = F_{p^f}.
SignData sign_constants(const Fq& F, u64 N);

// Odd j with p_1 | N / gcd(j, N) where G(eta_N^j) != zeta_N^{2Aj} G(eta_2).
std::vector<u64> sign_identity_failures(const Fq& F, u64 N, const SignData& sd);

}  // namespace pg

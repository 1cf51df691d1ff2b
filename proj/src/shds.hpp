#pragma once
#include <optional>
#include <string>
#include <vector>

#include "gauss.hpp"
#include "gfield.hpp"

namespace pg {

enum class YMode { General, Star };

// General: h > 1, h | m, (2h, ord, p) impure. Star: h > 1, h | m / m_1.
std::vector<u64> compute_Y(u64 N, u64 p, YMode mode);

struct IndexSet {
    u64 N = 0;
    std::vector<u64> I;  // sorted, in [0, N)
    std::vector<u64> Y;
};

struct IndexValidation {
    bool ok = true;
    int violated = 0;  // 0, 1 (residues mod m), or 2 (vanishing sum)
    u64 level = 0;     // offending h for condition 2
    std::string detail;
};

IndexValidation validate_index_set(const std::vector<u64>& I, u64 N, const std::vector<u64>& Y);

// Block construction with A_0 = J, A_1 empty.
std::vector<u64> default_index_set(u64 N, u64 m1);

struct ShdsInstance {
    u64 p = 0, f = 0, s = 1, N = 0, q = 0;
    IndexSet index;
    FqPtr field;  // F_{p^{fs}}
    u64 A = 0;    // sign constant in terms of the norm of the big field's generator, mod m
    bool star = false;
    std::optional<u64> m1;
};

// Validates I against Y (star mode when the triple has the subproduct property, general otherwise).
ShdsInstance build_instance(u64 p, u64 f, u64 s, u64 N, std::vector<u64> I, const FieldOptions& opts = {});

struct CharacterReport {
    bool ok = false;                // every value is (-1 +- G)/2
    std::vector<u64> plus_set;      // a with 2 psi_a(D) + 1 = +G_q(eta_2)
    bool dual_matches = false;      // plus_set == dual_index
    bool completeness = false;      // sum over all nonzero characters equals -|D|
    bool skew = false;              // x in D iff -x not in D
    bool square_scaling = false;    // D fixed by squares of F_p^x
    std::vector<CycElt> values;     // psi_{gamma^a}(D), a < N, in Z[zeta_p]
};

CharacterReport verify_character_values(const ShdsInstance& inst);

struct BruteForceResult {
    bool is_difference_set = false;
    u64 lambda = 0;
};

BruteForceResult brute_force_check(const ShdsInstance& inst);

// -I + 2As mod N.
std::vector<u64> dual_index(const ShdsInstance& inst);

struct InvariantReport {
    u64 a = 0;
    u64 distinct_values_found = 0;
    bool exhaustive = false;
    std::vector<u64> values;  // sorted
};

// Orbit representatives x = gamma^k, k < N, give the exact value set; a threshold stops early.
InvariantReport invariant_n_a(const ShdsInstance& inst, u64 a, std::optional<u64> threshold = std::nullopt,
                              unsigned threads = 0);
// Every x in F_q^x, for small q.
InvariantReport invariant_n_a_literal(const ShdsInstance& inst, u64 a);

struct FlatPolyResult {
    u64 p1 = 0, p2 = 0;
    std::optional<std::vector<u64>> witness;  // exponents in [0, 2 p1 p2)
    u64 searched = 0;
    bool relaxed = false;
};

// One lift bit per residue mod p1 p2; relaxed drops the Phi_{2p1}, Phi_{2p2} conditions.
FlatPolyResult flat_poly_search(u64 p1, u64 p2, bool relaxed = false, u64 budget = 1ULL << 24);

}  // namespace pg

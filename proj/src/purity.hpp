#pragma once
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"

namespace pg {

enum class Label {
    SemiPrimitive,
    P2,
    Index2,
    Index4_case1,
    Index4_case2,
    Index6,
    Index8_case1,
    Index8_case2,
    Index8_case3i,
    Index8_case3ii,
    Index8_case3iii,
    StarClass2,
    Exceptional,
    NotPure
};

enum class StarClass { Class1, Class2 };

const char* label_name(Label l);
const char* star_class_name(StarClass c);
std::optional<Label> parse_label(const std::string& s);

// N = 2m with m = m_1 ... m_r, m_i = p_i^{u_i}; parts sorted by prime.
struct Triple {
    u64 N = 0;
    u64 p = 0;  // residue class representative, reduced mod N
    u64 f = 0;  // ord_N(p)
    u64 m = 0;  // N / 2 when N is even, N otherwise
    std::vector<u64> primes;  // p_i
    std::vector<u64> parts;   // m_i
    std::vector<u64> orders;  // f_i = ord_{m_i}(p)
};

Triple make_triple(u64 N, u64 p);

bool stickelberger_pure(u64 N, u64 f, u64 p);
bool aoki_pure(u64 N, u64 p);
bool in_P2(u64 N, u64 p);
bool semiprimitive(u64 N, u64 p);
std::optional<int> evans_sufficient(u64 c, u64 d, u64 p);

struct StarResult {
    bool star = false;
    std::optional<StarClass> star_class;
    std::optional<std::size_t> m1_index;  // index into Triple::parts
};
StarResult has_property_star(u64 N, u64 f, u64 p);

// Index of the part serving as m_1, or absent.
std::optional<std::size_t> existmany_witness(u64 N, u64 f, u64 p);
bool existmany_sufficient(u64 N, u64 f, u64 p);
// Congruence form: p_1 = 7 mod 8, the other primes 3 mod 8, p_1 a square mod each of them,
// f_i = phi(m_i)/2 and those halves pairwise coprime.
bool existmany_congruence_form(u64 N, u64 f, u64 p);

std::optional<Label> classify_small_index(u64 N, u64 p);

// Least of [p^i]_N over 1 <= i <= max(1, f-1) with gcd(i, f) = 1.
u64 canonical_pbar(u64 N, u64 p);

struct PurityRecord {
    Triple triple;
    bool pure = false;
    bool stickelberger = false;
    bool aoki = false;
    Label label = Label::NotPure;
    std::vector<Label> labels;  // every label whose characterization matches
    bool star = false;
    std::optional<StarClass> star_class;
    u64 p_bar = 0;
};

// Runs both oracles; throws InternalError if they disagree.
PurityRecord purity_record(u64 N, u64 p);

}  // namespace pg

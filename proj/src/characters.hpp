#pragma once
#include <memory>
#include <vector>

#include "arith.hpp"

namespace pg {

enum class ComponentKind { OddPrimePower, TwoMinusOne, TwoFive, Trivial };

struct UnitComponent {
    ComponentKind kind;
    u64 prime;
    u64 prime_power;
    u64 generator;
    u64 order;
    std::vector<u32> dlog;  // indexed by residue mod prime_power; unused for the -1 part
};

class UnitGroup {
public:
    explicit UnitGroup(u64 N);

    u64 modulus() const { return N_; }
    const std::vector<UnitComponent>& components() const { return comps_; }
    u64 exponent() const { return exponent_; }  // lcm of component orders
    u64 order() const;                          // phi(N)

    // Exponent of a on each component generator; a must be prime to N.
    std::vector<u64> coordinates(u64 a) const;
    // Coordinate on a single component, given a unit modulo that component's prime power.
    u64 component_coordinate(std::size_t j, u64 a) const;

private:
    u64 N_;
    u64 exponent_ = 1;
    std::vector<UnitComponent> comps_;
};

using UnitGroupPtr = std::shared_ptr<const UnitGroup>;

UnitGroupPtr build_unit_group(u64 N);

// Value zeta_order^k, or zero.
struct RootOfUnity {
    bool zero = false;
    u64 k = 0;
    u64 order = 1;

    bool is_one() const { return !zero && k == 0; }
    bool is_minus_one() const { return !zero && order == 2 && k == 1; }
    friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
};

RootOfUnity make_root(u64 k, u64 order);  // reduced form
RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b);

struct DirichletCharacter {
    UnitGroupPtr group;
    std::vector<u64> exponents;

    u64 order() const;
    bool is_principal() const;
    bool is_odd() const;
    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.group->modulus() == b.group->modulus() && a.exponents == b.exponents;
    }
};

DirichletCharacter principal_character(UnitGroupPtr g);
std::vector<DirichletCharacter> all_characters(UnitGroupPtr g);

RootOfUnity evaluate(const DirichletCharacter& chi, i64 a);
// Value of the primitive character inducing chi.
RootOfUnity evaluate_primitive(const DirichletCharacter& chi, i64 a);
u64 conductor(const DirichletCharacter& chi);

std::vector<DirichletCharacter> d_minus(u64 N, u64 p);
std::vector<DirichletCharacter> qc_minus(u64 N, u64 p);

}  // namespace pg

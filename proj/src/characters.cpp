#include "characters.hpp"

#include "errors.hpp"

namespace pg {

UnitGroup::UnitGroup(u64 N) : N_(N) {
    if (N == 0 || N > 10000000) throw DomainError("unit group modulus must lie in [1, 10^7]");
    for (auto [p, e] : factor64(N)) {
        u64 pe = ipow(p, e);
        if (p == 2) {
            if (e == 1) {
                comps_.push_back({ComponentKind::Trivial, 2, 2, 1, 1, {}});
                continue;
            }
            comps_.push_back({ComponentKind::TwoMinusOne, 2, pe, pe - 1, 2, {}});
            if (e >= 3) {
                UnitComponent c{ComponentKind::TwoFive, 2, pe, 5, pe / 4, {}};
                c.dlog.assign(pe, 0);
                u64 x = 1;
                for (u64 k = 0; k < c.order; ++k) {
                    c.dlog[x] = static_cast<u32>(k);
                    x = x * 5 % pe;
                }
                comps_.push_back(std::move(c));
            }
            continue;
        }
        u64 g = primitive_root_prime_power(p, e);
        UnitComponent c{ComponentKind::OddPrimePower, p, pe, g, (p - 1) * (pe / p), {}};
        c.dlog.assign(pe, 0);
        u64 x = 1;
        for (u64 k = 0; k < c.order; ++k) {
            c.dlog[x] = static_cast<u32>(k);
            x = mulmod(x, g, pe);
        }
        comps_.push_back(std::move(c));
    }
    for (const auto& c : comps_) exponent_ = lcm(exponent_, c.order);
}

u64 UnitGroup::order() const {
    u64 r = 1;
    for (const auto& c : comps_) r *= c.order;
    return r;
}

u64 UnitGroup::component_coordinate(std::size_t j, u64 a) const {
    const UnitComponent& c = comps_[j];
    a %= c.prime_power;
    switch (c.kind) {
        case ComponentKind::OddPrimePower:
            return c.dlog[a];
        case ComponentKind::TwoMinusOne:
            return a % 4 == 3 ? 1 : 0;
        case ComponentKind::TwoFive:
            return c.dlog[a % 4 == 3 ? c.prime_power - a : a];
        case ComponentKind::Trivial:
            return 0;
    }
    return 0;
}

std::vector<u64> UnitGroup::coordinates(u64 a) const {
    a %= N_;
    if (gcd(a, N_) != 1 && N_ != 1) throw DomainError("coordinates: argument not a unit");
    std::vector<u64> out(comps_.size());
    for (std::size_t j = 0; j < comps_.size(); ++j) out[j] = component_coordinate(j, a);
    return out;
}

UnitGroupPtr build_unit_group(u64 N) { return std::make_shared<const UnitGroup>(N); }

RootOfUnity make_root(u64 k, u64 order) {
    k %= order;
    u64 g = gcd(k, order);
    if (k == 0) return {false, 0, 1};
    return {false, k / g, order / g};
}

RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
    if (a.zero || b.zero) return {true, 0, 1};
    u64 L = lcm(a.order, b.order);
    return make_root(a.k * (L / a.order) + b.k * (L / b.order), L);
}

u64 DirichletCharacter::order() const {
    u64 o = 1;
    const auto& comps = group->components();
    for (std::size_t j = 0; j < comps.size(); ++j) o = lcm(o, comps[j].order / gcd(exponents[j], comps[j].order));
    return o;
}

bool DirichletCharacter::is_principal() const {
    for (u64 e : exponents)
        if (e != 0) return false;
    return true;
}

bool DirichletCharacter::is_odd() const {
    u64 N = group->modulus();
    if (N <= 2) return false;
    return evaluate(*this, static_cast<i64>(N - 1)).is_minus_one();
}

DirichletCharacter principal_character(UnitGroupPtr g) {
    std::size_t r = g->components().size();
    return {std::move(g), std::vector<u64>(r, 0)};
}

namespace {

// Enumerate every exponent vector in odometer order.
template <typename Fn>
void for_each_exponents(const UnitGroup& g, Fn&& fn) {
    const auto& comps = g.components();
    std::vector<u64> e(comps.size(), 0);
    while (true) {
        fn(e);
        std::size_t j = 0;
        for (; j < comps.size(); ++j) {
            if (++e[j] < comps[j].order) break;
            e[j] = 0;
        }
        if (j == comps.size()) return;
    }
}

RootOfUnity value_from_coords(const UnitGroup& g, const std::vector<u64>& exps, const std::vector<u64>& coords,
                              const std::vector<bool>* skip = nullptr) {
    u64 L = g.exponent();
    u128 k = 0;
    const auto& comps = g.components();
    for (std::size_t j = 0; j < comps.size(); ++j) {
        if (skip && (*skip)[j]) continue;
        k += static_cast<u128>(exps[j]) * coords[j] % comps[j].order * (L / comps[j].order);
    }
    return make_root(static_cast<u64>(k % L), L);
}

}  // namespace

std::vector<DirichletCharacter> all_characters(UnitGroupPtr g) {
    std::vector<DirichletCharacter> out;
    out.reserve(g->order());
    for_each_exponents(*g, [&](const std::vector<u64>& e) { out.push_back({g, e}); });
    return out;
}

RootOfUnity evaluate(const DirichletCharacter& chi, i64 a) {
    const UnitGroup& g = *chi.group;
    u64 N = g.modulus();
    u64 r = static_cast<u64>(mod(a, static_cast<i64>(N)));
    if (gcd(r, N) != 1 && N != 1) return {true, 0, 1};
    return value_from_coords(g, chi.exponents, g.coordinates(r));
}

u64 conductor(const DirichletCharacter& chi) {
    const auto& comps = chi.group->components();
    u64 cond = 1;
    u64 two_minus = 0, two_five_exp = 0, two_five_order = 1;
    bool two_seen = false;
    for (std::size_t j = 0; j < comps.size(); ++j) {
        const UnitComponent& c = comps[j];
        u64 e = chi.exponents[j];
        switch (c.kind) {
            case ComponentKind::OddPrimePower: {
                u64 oc = c.order / gcd(e, c.order);
                if (oc == 1) break;
                u64 level = c.prime, phi_level = c.prime - 1;
                while (phi_level % oc != 0) {
                    level *= c.prime;
                    phi_level *= c.prime;
                }
                cond *= level;
                break;
            }
            case ComponentKind::TwoMinusOne:
                two_seen = true;
                two_minus = e;
                break;
            case ComponentKind::TwoFive:
                two_seen = true;
                two_five_exp = e;
                two_five_order = c.order;
                break;
            case ComponentKind::Trivial:
                break;
        }
    }
    if (two_seen) {
        if (two_five_exp != 0) {
            u64 o5 = two_five_order / gcd(two_five_exp, two_five_order);
            cond *= 4 * o5;
        } else if (two_minus != 0) {
            cond *= 4;
        }
    }
    return cond;
}

RootOfUnity evaluate_primitive(const DirichletCharacter& chi, i64 a) {
    u64 cond = conductor(chi);
    if (cond != 1 && gcd(static_cast<u64>(mod(a, static_cast<i64>(cond))), cond) != 1) return {true, 0, 1};
    const UnitGroup& g = *chi.group;
    const auto& comps = g.components();
    std::vector<u64> coords(comps.size(), 0);
    std::vector<bool> skip(comps.size(), false);
    for (std::size_t j = 0; j < comps.size(); ++j) {
        if (mod(a, static_cast<i64>(comps[j].prime)) == 0) {
            skip[j] = true;  // chi is trivial on this component since the prime does not divide cond
            continue;
        }
        coords[j] = g.component_coordinate(j, static_cast<u64>(mod(a, static_cast<i64>(comps[j].prime_power))));
    }
    return value_from_coords(g, chi.exponents, coords, &skip);
}

std::vector<DirichletCharacter> d_minus(u64 N, u64 p) {
    if (gcd(p % N, N) != 1 && N != 1) throw DomainError("d_minus: p must be prime to N");
    auto g = build_unit_group(N);
    std::vector<DirichletCharacter> out;
    if (N <= 2) return out;
    std::vector<u64> cp = g->coordinates(p % N), cm = g->coordinates(N - 1);
    for_each_exponents(*g, [&](const std::vector<u64>& e) {
        if (!value_from_coords(*g, e, cm).is_minus_one()) return;
        if (!value_from_coords(*g, e, cp).is_one()) return;
        out.push_back({g, e});
    });
    return out;
}

std::vector<DirichletCharacter> qc_minus(u64 N, u64 p) {
    std::vector<DirichletCharacter> out;
    auto primes = factor64(N);
    for (auto& chi : d_minus(N, p)) {
        u64 c = conductor(chi);
        bool all = true;
        for (auto [q, e] : primes)
            if (c % q != 0) all = false;
        if (all) out.push_back(std::move(chi));
    }
    return out;
}

}  // namespace pg

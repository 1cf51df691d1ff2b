#include "puregauss/puregauss.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "classify.hpp"
#include "errors.hpp"
#include "gauss.hpp"
#include "json.hpp"
#include "purity.hpp"
#include "shds.hpp"

#ifndef PG_VERSION_STRING
#define PG_VERSION_STRING "0.0.0"
#endif

using nlohmann::json;
using namespace pg;

struct pg_shds {
    ShdsInstance inst;
};

namespace {

thread_local std::string g_last_error;

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
pg_status guarded(char** out, F&& body) {
    try {
        json j = body();
        if (out) *out = dup(j.dump());
        g_last_error.clear();
        return PG_OK;
    } catch (const DomainError& e) {
        g_last_error = e.what();
        return PG_ERR_DOMAIN;
    } catch (const ResourceError& e) {
        g_last_error = e.what();
        return PG_ERR_RESOURCE;
    } catch (const InternalError& e) {
        g_last_error = e.what();
        return PG_ERR_INTERNAL;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return PG_ERR_RESOURCE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PG_ERR_INTERNAL;
    }
}

json cyc_json(const CycElt& x) {
    json coeffs = json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(c.get_str());
    return {{"conductor", x.conductor()}, {"coeffs", coeffs}, {"text", to_string(x)}};
}

json star_class_json(const std::optional<StarClass>& c) {
    return c ? json(star_class_name(*c)) : json(nullptr);
}

json row_json(const TableRow& r, bool explain) {
    json j = {{"N", r.N}, {"f", r.f}, {"p_bar", r.p_bar}, {"label", label_name(r.label)},
              {"star_class", star_class_json(r.star_class)}};
    if (explain) j["provenance"] = r.provenance;
    return j;
}

FieldOptions field_opts(uint64_t cap) {
    FieldOptions o;
    if (cap) o.cap = cap;
    return o;
}

void check_field_args(uint64_t p, uint64_t f) {
    if (!is_prime(p)) throw DomainError("p must be prime");
    if (f == 0 || f > 64) throw DomainError("f out of range");
}

}  // namespace

extern "C" {

const char* pg_version(void) { return PG_VERSION_STRING; }

const char* pg_last_error(void) { return g_last_error.c_str(); }

void pg_string_free(char* s) { std::free(s); }

pg_status pg_purity_json(uint64_t N, uint64_t p, uint64_t f, char** out) {
    return guarded(out, [&] {
        if (N < 1) throw DomainError("N must be positive");
        if (gcd(p, N) != 1) throw DomainError("p must be prime to N");
        u64 order = mult_order(p % N, N);
        if (f != 0 && f != order) throw DomainError("f must equal the order of p modulo N");
        PurityRecord r = purity_record(N, p);
        json labels = json::array();
        for (Label l : r.labels) labels.push_back(label_name(l));
        return json{{"N", N},
                    {"f", r.triple.f},
                    {"p_bar", r.p_bar},
                    {"pure", r.pure},
                    {"label", label_name(r.label)},
                    {"labels", labels},
                    {"star", r.star},
                    {"star_class", star_class_json(r.star_class)},
                    {"stickelberger", r.stickelberger},
                    {"aoki", r.aoki}};
    });
}

pg_status pg_classify_f_json(uint64_t f, int explain, char** out) {
    return guarded(out, [&] {
        ClassifyResult r = enumerate_Pstar(f);
        json rows = json::array();
        for (const auto& row : r.rows) rows.push_back(row_json(row, explain != 0));
        json j = {{"f", r.f}, {"published", r.published}, {"rows", rows}};
        if (explain) {
            json steps = json::array();
            for (const auto& s : r.pruning.steps)
                steps.push_back({{"step", s.name}, {"eliminated", s.eliminated}, {"survivors", s.survivors}});
            j["candidates"] = r.candidates;
            j["pruning"] = steps;
            j["survivors"] = r.pruning.survivors;
        }
        return j;
    });
}

pg_status pg_scan_tables_json(uint64_t nmax, unsigned threads, int explain, char** out) {
    return guarded(out, [&] {
        ScanOptions o;
        o.threads = threads;
        json rows = json::array();
        for (const auto& row : scan_tables(nmax, o)) rows.push_back(row_json(row, explain != 0));
        return json{{"nmax", nmax}, {"rows", rows}};
    });
}

pg_status pg_gauss_sum_json(uint64_t p, uint64_t f, uint64_t N, int64_t j, uint64_t field_cap, char** out) {
    return guarded(out, [&] {
        check_field_args(p, f);
        FqPtr F = build_field(p, static_cast<u32>(f), field_opts(field_cap));
        GaussSumValue G = gauss_sum(*F, N, j);
        return json{{"p", p}, {"f", f}, {"N", N}, {"j", j}, {"value", cyc_json(G.value)}, {"pure", is_pure_direct(G)}};
    });
}

pg_status pg_sign_constants_json(uint64_t p, uint64_t f, uint64_t N, uint64_t field_cap, char** out) {
    return guarded(out, [&] {
        check_field_args(p, f);
        FqPtr F = build_field(p, static_cast<u32>(f), field_opts(field_cap));
        SignData sd = sign_constants(*F, N);
        return json{{"p", p},
                    {"f", f},
                    {"N", N},
                    {"parts", sd.parts},
                    {"s", sd.s},
                    {"m", sd.m},
                    {"A", sd.A},
                    {"epsilon_order_bound", sd.epsilon_order_bound},
                    {"identity_failures", sign_identity_failures(*F, N, sd)}};
    });
}

pg_status pg_default_index_set_json(uint64_t N, uint64_t p, char** out) {
    return guarded(out, [&] {
        if (N < 2 || gcd(p, N) != 1) throw DomainError("p must be prime to N >= 2");
        Triple t = make_triple(N, p);
        StarResult star = has_property_star(N, t.f, t.p);
        if (!star.star) throw DomainError("triple lacks the subproduct property");
        u64 m1 = star.m1_index ? t.parts[*star.m1_index] : 1;
        std::vector<u64> I;
        if (m1 == 1) {
            for (u64 i = 0; i < N / 2; ++i) I.push_back(i);
        } else {
            I = default_index_set(N, m1);
        }
        return json{{"N", N}, {"m1", m1}, {"I", I}};
    });
}

pg_status pg_shds_build(uint64_t p, uint64_t f, uint64_t s, uint64_t N, const uint64_t* index, size_t count,
                        uint64_t field_cap, pg_shds** out) {
    if (!out) {
        g_last_error = "null output handle";
        return PG_ERR_DOMAIN;
    }
    *out = nullptr;
    return guarded(nullptr, [&] {
        std::vector<u64> I(index, index + count);
        auto h = std::make_unique<pg_shds>();
        h->inst = build_instance(p, f, s, N, std::move(I), field_opts(field_cap));
        *out = h.release();
        return json();
    });
}

void pg_shds_free(pg_shds* h) { delete h; }

pg_status pg_shds_describe_json(const pg_shds* h, char** out) {
    return guarded(out, [&] {
        if (!h) throw DomainError("null handle");
        const ShdsInstance& i = h->inst;
        return json{{"p", i.p},         {"f", i.f},         {"s", i.s},
                    {"N", i.N},         {"q", i.q},         {"I", i.index.I},
                    {"Y", i.index.Y},   {"A", i.A},         {"star", i.star},
                    {"m1", i.m1 ? json(*i.m1) : json(nullptr)}};
    });
}

pg_status pg_shds_verify_json(const pg_shds* h, int brute_force, char** out) {
    return guarded(out, [&] {
        if (!h) throw DomainError("null handle");
        CharacterReport r = verify_character_values(h->inst);
        json values = json::array();
        for (const auto& v : r.values) values.push_back(to_string(v));
        json j = {{"verified", r.ok && r.completeness && r.skew},
                  {"character_values_ok", r.ok},
                  {"completeness", r.completeness},
                  {"skew", r.skew},
                  {"square_scaling", r.square_scaling},
                  {"dual_matches", r.dual_matches},
                  {"plus_set", r.plus_set},
                  {"values", values}};
        if (brute_force) {
            BruteForceResult b = brute_force_check(h->inst);
            j["brute_force"] = {{"is_difference_set", b.is_difference_set}, {"lambda", b.lambda}};
        }
        return j;
    });
}

pg_status pg_shds_dual_json(const pg_shds* h, char** out) {
    return guarded(out, [&] {
        if (!h) throw DomainError("null handle");
        const ShdsInstance& i = h->inst;
        return json{{"I", i.index.I}, {"dual", dual_index(i)}, {"shift", (2 * i.A * i.s) % i.N}, {"A", i.A}};
    });
}

pg_status pg_shds_invariant_json(const pg_shds* h, uint64_t a, uint64_t threshold, int literal, unsigned threads,
                                 char** out) {
    return guarded(out, [&] {
        if (!h) throw DomainError("null handle");
        InvariantReport r = literal ? invariant_n_a_literal(h->inst, a)
                                    : invariant_n_a(h->inst, a, threshold ? std::optional<u64>(threshold) : std::nullopt,
                                                    threads);
        return json{{"a", r.a},
                    {"distinct_values_found", r.distinct_values_found},
                    {"exhaustive", r.exhaustive},
                    {"values", r.values}};
    });
}

pg_status pg_flatpoly_json(uint64_t p1, uint64_t p2, int relaxed, uint64_t budget, char** out) {
    return guarded(out, [&] {
        FlatPolyResult r = flat_poly_search(p1, p2, relaxed != 0, budget ? budget : (1ULL << 24));
        return json{{"p1", r.p1},
                    {"p2", r.p2},
                    {"relaxed", r.relaxed},
                    {"searched", r.searched},
                    {"witness", r.witness ? json(*r.witness) : json(nullptr)}};
    });
}

}  // extern "C"

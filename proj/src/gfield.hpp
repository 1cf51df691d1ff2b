#pragma once
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "arith.hpp"

namespace pg {

inline constexpr u64 kDefaultFieldCap = 1ULL << 23;
inline constexpr u32 kNoLog = std::numeric_limits<u32>::max();

// F_{p^f}. Elements are encoded as sum c_i p^i for the polynomial residue sum c_i x^i.
struct Fq {
    u32 p = 0;
    u32 f = 0;
    u32 q = 0;
    std::vector<u32> modulus;      // monic, low to high, size f + 1
    u32 omega = 0;                 // encoding of the primitive element
    std::vector<u32> exp_table;    // k -> encoding of omega^k, size q - 1
    std::vector<u32> log_table;    // encoding -> k; kNoLog at 0
    std::vector<u32> trace_log;    // k -> Tr(omega^k)
    std::vector<u32> basis_trace;  // Tr(x^i), i < f

    u32 element(u64 k) const { return exp_table[k % (q - 1)]; }
    u32 dlog(u32 enc) const { return log_table[enc]; }
    u32 trace_of_log(u64 k) const { return trace_log[k % (q - 1)]; }
    u32 trace(u32 enc) const { return enc == 0 ? 0 : trace_log[log_table[enc]]; }

    u32 add(u32 a, u32 b) const;
    u32 sub(u32 a, u32 b) const;
    u32 mul(u32 a, u32 b) const;
    u32 scalar(u32 c, u32 a) const;  // c in F_p
    u32 frobenius(u32 a) const;      // a^p
};

using FqPtr = std::shared_ptr<const Fq>;

struct FieldOptions {
    u64 cap = kDefaultFieldCap;
    bool use_cache = true;  // honours PUREGAUSS_FIELD_CACHE when set
};

FqPtr build_field(u64 p, u32 f, const FieldOptions& opts = {});

// k -> dlog(1 + omega^k), or kNoLog where 1 + omega^k = 0.
std::vector<u32> zech_table(const Fq& F);

// Directory named by PUREGAUSS_FIELD_CACHE, or empty.
std::string field_cache_dir();

}  // namespace pg

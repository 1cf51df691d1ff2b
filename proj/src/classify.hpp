#pragma once
#include <optional>
#include <string>
#include <vector>

#include "purity.hpp"

namespace pg {

struct TableRow {
    u64 N = 0, f = 0, p_bar = 0;
    Label label = Label::Exceptional;
    std::optional<StarClass> star_class;
    std::vector<std::string> provenance;  // filters the row survived, in order
};

// Odd f <= 23: every N = 2m > 2 whose odd prime-power parts divide 2^{2f} - 1 (r odd)
// or divide 2^{2f} - 1 or have phi dividing 4f (r even).
std::vector<u64> ao1_candidates(u64 f);

struct PruneStep {
    std::string name;
    std::vector<u64> eliminated;
    std::vector<u64> survivors;  // after this step
};

struct PruneResult {
    std::vector<u64> survivors;
    std::vector<PruneStep> steps;
};

// Filter names, in application order.
inline const std::vector<std::string> kPruneStepNames = {
    "cross_order",          // a part not dividing 2^f-1 must divide p_h^f - 1 for another prime p_h
    "pair_bound",           // r = 2 refinement of the totient bound
    "even_totient_bound",   // r even: phi(m_h) <= 2f for parts dividing 2^{2f}-1
    "even_cross_order",     // r even: other parts divide p_j^{2f} - 1
    "odd_mixed",            // r odd: totient bound or cross divisibility
};

PruneResult prune(u64 f, const std::vector<u64>& candidates);

struct ClassifyResult {
    u64 f = 0;
    bool published = true;  // false for odd f outside the published list
    std::vector<u64> candidates;
    PruneResult pruning;
    std::vector<TableRow> rows;
};

ClassifyResult enumerate_Pstar(u64 f);

struct ScanOptions {
    unsigned threads = 0;  // 0 means hardware concurrency
};

std::vector<TableRow> scan_tables(u64 N_max, const ScanOptions& opts = {});

// Table label: small-index characterization first, then P2, else Exceptional.
Label table_label(u64 N, u64 p);

}  // namespace pg

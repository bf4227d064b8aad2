#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "mdfa/instance.hpp"
#include "mdfa/verify.hpp"

namespace mdfa {

// Brute-force ground truth. Nothing here calls into the verifiers or deciders;
// envy checks are recomputed from the definitions by exhaustive subset search.

struct OracleBudget {
    std::uint64_t max_allocations = 20'000'000;
    std::uint64_t max_subsets_per_pair = 1'000'000;
    /// For identical instances, only enumerate allocations giving item 0 to agent 0.
    /// The lexicographically first witness is unaffected (agent relabelling).
    bool fix_first_item = false;
    unsigned threads = 1;
};

struct OracleResult {
    bool exists = false;
    std::optional<Allocation> allocation;  // lexicographically first satisfying allocation
    std::uint64_t allocations_checked = 0;
};

/// Enumerates all n^m allocations, item 0 being the most significant digit.
/// Throws ResourceLimitExceeded when n^m exceeds budget.max_allocations.
OracleResult oracle_exists(const Instance& inst, const FairnessQuery& query,
                           const OracleBudget& budget = {});

/// Strong sEFc by trying every removal set of size <= c for every ordered pair.
bool oracle_verify_strong(const Instance& inst, const Allocation& alloc, std::size_t c,
                          const OracleBudget& budget = {});

/// Weak sEFc by trying every removal set of size <= c per pair and dimension.
bool oracle_verify_weak(const Instance& inst, const Allocation& alloc, std::size_t c,
                        const OracleBudget& budget = {});

}  // namespace mdfa

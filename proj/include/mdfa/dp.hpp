#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "mdfa/instance.hpp"

namespace mdfa {

struct DpOptions {
    /// Maximum number of distinct states in any one DP layer.
    std::uint64_t state_cap = 10'000'000;
    /// Maximum number of pledged-set partitions the strong decider may enumerate.
    std::uint64_t family_cap = 1'000'000;
    /// Workers for the strong decider's partition sweep. Results do not depend on it.
    unsigned threads = 1;
};

struct ExistenceResult {
    bool exists = false;
    std::optional<Allocation> allocation;  // a witnessing allocation when exists
    std::uint64_t states = 0;    // DP states generated, summed over layers (and partitions)
    std::uint64_t families = 0;  // pledged-set partitions examined (strong only)
};

/// Exact weak sEFc existence via the (V, T) state DP over items in input order.
/// Throws ResourceLimitExceeded when a layer exceeds options.state_cap.
ExistenceResult exists_weak(const Instance& inst, std::size_t c, const DpOptions& options = {});

/// Exact strong sEFc existence. m <= n*c is answered by round robin; otherwise every
/// partition of pledged removal items (|X_p| <= (n-1)c, disjoint across agents) seeds
/// a valuation-profile DP over the remaining items, and a final state is accepted
/// when every ordered pair (q, p) has some Y subset of X_p, |Y| <= c, covering q's envy.
/// Throws ResourceLimitExceeded when a cap is hit and no witness was found.
ExistenceResult exists_strong(const Instance& inst, std::size_t c, const DpOptions& options = {});

/// Number of distinct (V, T) states after allocating the first `prefix` items.
std::uint64_t reachable_state_count(const Instance& inst, std::size_t c, std::size_t prefix,
                                    const DpOptions& options = {});

}  // namespace mdfa

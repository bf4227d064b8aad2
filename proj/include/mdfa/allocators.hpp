#pragma once

#include <cstddef>
#include <vector>

#include "mdfa/instance.hpp"
#include "mdfa/lp.hpp"
#include "mdfa/rational.hpp"
#include "mdfa/verify.hpp"

namespace mdfa {

enum class AllocatorKind { TwoAgentLp, TwoAgentIdentical, NAgentPreassign };

/// Item shares at an LP vertex. shares[i][j] is the fraction of item j held by agent i.
/// Items the n-agent method settles outside the polytope (pre-assigned, or dealt by
/// round robin) appear with integral shares.
struct FractionalAllocation {
    AllocatorKind source = AllocatorKind::TwoAgentLp;
    std::vector<std::vector<Rational>> shares;
};

struct AllocatorTrace {
    std::vector<std::vector<ItemSet>> pre_assigned;  // [agent][dim] -> Z_{i,k}; empty unless n-agent LP path
    std::vector<ItemSet> integral;                   // I_i
    std::vector<ItemSet> fractional;                 // F_i
    ItemSet remaining;                               // R (n-agent LP path)
    std::size_t guarantee_c = 0;
    bool round_robin = false;  // n-agent method took the m <= n*c shortcut
};

struct AllocatorResult {
    Allocation allocation;
    AllocatorTrace trace;
    FractionalAllocation fractional;
    /// Removal sets certifying strong sEF(guarantee_c): F_i' (two-agent methods) or
    /// F_i' together with every Z_{i',k} (n-agent), or the whole bundle after round robin.
    StrongWitness witness;
};

struct NAgentOptions {
    /// Run the pre-assignment + polytope path even when m <= n*c, provided there are
    /// enough items to fill every Z_{i,k}.
    bool force_preassignment = false;
};

/// Two agents: strong sEF(2l-1) by rounding a basic optimum of the envy LP.
AllocatorResult allocate_two_agents(const Instance& inst);

/// Two identical agents: strong sEF(l) by rounding a vertex of the equal-split polytope.
AllocatorResult allocate_two_agents_identical(const Instance& inst);

/// Any n: strong sEF(n^2 l^2) via top-item pre-assignment and polytope rounding.
AllocatorResult allocate_n_agents(const Instance& inst, const NAgentOptions& options = {});

/// The envy LP over x_j = agent 1's share of item j (exposed for testing).
LinearProgram two_agent_lp(const Instance& inst);
/// The polytope sum_j v_jk (2 x_j - 1) = 0 for every k, 0 <= x <= 1.
LinearProgram identical_split_polytope(const Instance& inst);
/// The proportional-envy polytope over x_{i,g} for g in `remaining`, variable i * |R| + t.
LinearProgram n_agent_polytope(const Instance& inst, const ItemSet& remaining);

/// Top-item pre-assignment: for each (agent, dimension) in lexicographic order, move the `per_slot`
/// highest-valued items (ties: lowest index) from the pool into Z_{i,k}.
/// Returns Z and leaves the unassigned items in `remaining`.
std::vector<std::vector<ItemSet>> preassign_top_items(const Instance& inst, std::size_t per_slot,
                                                      ItemSet& remaining);

}  // namespace mdfa

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mdfa/instance.hpp"

namespace mdfa {

/// Two identical agents, three 0/1 items in three dimensions; no weak sEF1 allocation.
Instance table1_instance();
/// Two identical agents, three items in two dimensions; no strong sEF1 allocation.
Instance table2_instance();

/// +-1 matrix with mutually orthogonal rows.
struct HadamardMatrix {
    std::size_t order = 1;
    std::vector<std::vector<int>> entries;

    bool rows_orthogonal() const;
};

/// Sylvester doubling from order 1. Throws std::invalid_argument unless order is a power of two.
HadamardMatrix sylvester_hadamard(std::size_t order);

/// Smallest power of two that is at least 4c^2 + 1.
std::size_t hadamard_order_for(std::size_t c);

/// Binary identical 2-agent instance with r items and r dimensions, v_jk = (H_jk + 1) / 2,
/// r = hadamard_order_for(c). Admits no weak sEFc allocation.
Instance hadamard_instance(std::size_t c);

/// 2 identical agents, 2c+1 items and dimensions, v_jk = [j == k]. Admits no strong sEFc allocation.
Instance diagonal_instance(std::size_t c);

/// Monotone NAE-3SAT: each clause lists three distinct variable indices.
struct Mnae3SatSource {
    std::size_t n_vars = 0;
    std::vector<std::array<std::size_t, 3>> clauses;
};

/// Positive integers a_1..a_n with sum 2T.
struct PartitionSource {
    std::vector<Value> a;
    Value target = 0;

    /// Derives target = sum / 2; throws std::invalid_argument when the sum is odd.
    static PartitionSource from_values(std::vector<Value> a);
};

/// 3-dimensional matching over X, Y, Z = {0..n-1}; triplet = (x, y, z).
struct ThreeDmSource {
    std::size_t n = 0;
    std::vector<std::array<std::size_t, 3>> triplets;
};

struct ThreeDmReduction {
    Instance instance;
    Allocation allocation;  // ({g*}, all triplet items)
    std::size_t c = 0;      // |T| - n
};

/// Item per variable, dimension per clause, v = 1 iff the variable occurs in the clause.
Instance reduce_mnae3sat(const Mnae3SatSource& src);
/// n + 2 items in 2 dimensions: (a_j, a_j), then (2T+1, 0) and (0, 2T+1).
Instance reduce_partition(const PartitionSource& src);
/// Items: triplets in input order, then g*. Dimensions: x, then n + y, then 2n + z.
ThreeDmReduction reduce_3dm(const ThreeDmSource& src);

/// Uniform entries in [0, v_max] drawn from Xoshiro256(seed). Draw order: for an
/// identical instance item-major then dimension; otherwise agent, item, dimension.
Instance random_instance(std::uint64_t seed, std::size_t n_agents, std::size_t n_items,
                         std::size_t n_dims, Value v_max, bool identical);

}  // namespace mdfa

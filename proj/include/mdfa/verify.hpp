#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mdfa/instance.hpp"

namespace mdfa {

enum class Notion { Weak, Strong };

std::string to_string(Notion notion);
/// Parses "weak" / "strong"; throws std::invalid_argument otherwise.
Notion parse_notion(const std::string& text);

struct FairnessQuery {
    Notion notion = Notion::Weak;
    std::size_t c = 0;
};

/// Weak witness entry: removing `removal` from the envied bundle clears envy in `dim`.
struct WeakRemoval {
    std::size_t envier;
    std::size_t envied;
    std::size_t dim;
    ItemSet removal;
    bool operator==(const WeakRemoval&) const = default;
};

/// Strong witness entry: one removal set clears envy in every dimension.
struct StrongRemoval {
    std::size_t envier;
    std::size_t envied;
    ItemSet removal;
    bool operator==(const StrongRemoval&) const = default;
};

struct WeakWitness {
    std::vector<WeakRemoval> entries;
};

struct StrongWitness {
    std::vector<StrongRemoval> entries;
};

/// An (envier, envied[, dim]) triple the verifier could not certify.
struct Violation {
    std::size_t envier;
    std::size_t envied;
    std::size_t dim;  // npos for strong violations, which concern all dimensions at once
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    bool operator==(const Violation&) const = default;
};

struct WeakVerdict {
    bool satisfied = false;
    WeakWitness witness;               // filled when satisfied
    std::vector<Violation> violations;  // filled when not
};

struct StrongVerdict {
    bool satisfied = false;
    StrongWitness witness;
    std::vector<Violation> violations;
    std::uint64_t nodes = 0;  // branch-and-bound nodes explored over all pairs
};

struct StrongSearchOptions {
    /// Node budget per ordered pair. Exceeding it throws ResourceLimitExceeded.
    std::uint64_t node_budget = 10'000'000;
};

/// Weak sEFc check: per (i, i', k) the min(c, |A_i'|) largest values of A_i' in
/// dimension k are removed greedily. Ties go to the lowest item index.
WeakVerdict verify_weak(const Instance& inst, const Allocation& alloc, std::size_t c);

/// Strong sEFc check by exact branch and bound over removal subsets.
/// A pair that is proven violated makes the answer false even if another pair
/// exhausts its budget; only when no pair fails and some pair is undecided is
/// ResourceLimitExceeded thrown.
StrongVerdict verify_strong(const Instance& inst, const Allocation& alloc, std::size_t c,
                            const StrongSearchOptions& options = {});

/// Smallest |X|, X subset of A_envied, that removes envy of `envier` in every dimension.
std::size_t min_removal_size(const Instance& inst, const Allocation& alloc, std::size_t envier,
                             std::size_t envied, const StrongSearchOptions& options = {});

/// Replays a witness against the definitions. Requires one entry for every
/// ordered pair (and every dimension, for weak), each a subset of the envied
/// bundle with at most c items.
bool replay_weak_witness(const Instance& inst, const Allocation& alloc, std::size_t c,
                         const WeakWitness& witness);
bool replay_strong_witness(const Instance& inst, const Allocation& alloc, std::size_t c,
                           const StrongWitness& witness);

}  // namespace mdfa

#include "mdfa/oracle.hpp"

#include <algorithm>
#include <functional>
#include <exception>
#include <thread>
#include <vector>

#include "mdfa/error.hpp"

namespace mdfa {

namespace {

class ExhaustiveChecker {
public:
    ExhaustiveChecker(const Instance& inst, std::size_t c, const OracleBudget& budget)
        : inst_(inst), c_(c), budget_(budget), dims_(inst.n_dims()) {}

    /// bundles must be a partition of the items.
    bool holds(Notion notion, const std::vector<ItemSet>& bundles) const {
        const std::size_t n = bundles.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto own = totals(i, bundles[i]);
            for (std::size_t o = 0; o < n; ++o) {
                if (o == i) continue;
                const auto theirs = totals(i, bundles[o]);
                const bool ok = notion == Notion::Strong ? strong_pair(i, own, theirs, bundles[o])
                                                         : weak_pair(i, own, theirs, bundles[o]);
                if (!ok) return false;
            }
        }
        return true;
    }

private:
    std::vector<Value> totals(std::size_t agent, const ItemSet& items) const {
        std::vector<Value> t(dims_, 0);
        for (std::size_t g : items)
            for (std::size_t k = 0; k < dims_; ++k) t[k] += inst_.value(agent, g, k);
        return t;
    }

    // Calls visit(removed_value) on every subset of `items` with at most c elements,
    // stopping when visit returns true.
    bool any_subset(std::size_t agent, const ItemSet& items,
                    const std::function<bool(const std::vector<Value>&)>& visit) const {
        std::vector<Value> removed(dims_, 0);
        std::uint64_t visited = 0;
        std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
            if (++visited > budget_.max_subsets_per_pair) {
                throw ResourceLimitExceeded("oracle subset enumeration exceeded its budget", visited,
                                            budget_.max_subsets_per_pair);
            }
            if (visit(removed)) return true;
            if (left == 0) return false;
            for (std::size_t t = from; t < items.size(); ++t) {
                for (std::size_t k = 0; k < dims_; ++k) removed[k] += inst_.value(agent, items[t], k);
                const bool hit = rec(t + 1, left - 1);
                for (std::size_t k = 0; k < dims_; ++k) removed[k] -= inst_.value(agent, items[t], k);
                if (hit) return true;
            }
            return false;
        };
        return rec(0, c_);
    }

    bool strong_pair(std::size_t i, const std::vector<Value>& own, const std::vector<Value>& theirs,
                     const ItemSet& envied) const {
        return any_subset(i, envied, [&](const std::vector<Value>& removed) {
            for (std::size_t k = 0; k < dims_; ++k)
                if (own[k] < theirs[k] - removed[k]) return false;
            return true;
        });
    }

    bool weak_pair(std::size_t i, const std::vector<Value>& own, const std::vector<Value>& theirs,
                   const ItemSet& envied) const {
        std::vector<bool> fixed(dims_, false);
        std::size_t remaining = dims_;
        return any_subset(i, envied, [&](const std::vector<Value>& removed) {
            for (std::size_t k = 0; k < dims_; ++k) {
                if (!fixed[k] && own[k] >= theirs[k] - removed[k]) {
                    fixed[k] = true;
                    --remaining;
                }
            }
            return remaining == 0;
        });
    }

    const Instance& inst_;
    std::size_t c_;
    const OracleBudget& budget_;
    std::size_t dims_;
};

std::vector<ItemSet> bundles_of(const std::vector<std::size_t>& owner, std::size_t n) {
    std::vector<ItemSet> b(n);
    for (std::size_t j = 0; j < owner.size(); ++j) b[owner[j]].push_back(j);
    return b;
}

// Digits of `index` in base n, item 0 most significant.
void decode(std::uint64_t index, std::size_t n, std::vector<std::size_t>& owner) {
    for (std::size_t j = owner.size(); j-- > 0;) {
        owner[j] = static_cast<std::size_t>(index % n);
        index /= n;
    }
}

}  // namespace

OracleResult oracle_exists(const Instance& inst, const FairnessQuery& query,
                           const OracleBudget& budget) {
    const std::size_t n = inst.n_agents();
    const std::size_t m = inst.n_items();
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < m; ++j) {
        if (total > budget.max_allocations / n) {
            throw ResourceLimitExceeded("oracle enumeration of n^m allocations exceeds its budget",
                                        total, budget.max_allocations);
        }
        total *= n;
    }
    // With item 0 pinned to agent 0 only the first block of indices is visited.
    const std::uint64_t end = (budget.fix_first_item && inst.is_identical() && m > 0) ? total / n : total;

    const ExhaustiveChecker checker(inst, query.c, budget);
    auto scan = [&](std::uint64_t from, std::uint64_t to) -> std::optional<std::uint64_t> {
        std::vector<std::size_t> owner(m);
        for (std::uint64_t t = from; t < to; ++t) {
            decode(t, n, owner);
            if (checker.holds(query.notion, bundles_of(owner, n))) return t;
        }
        return std::nullopt;
    };

    OracleResult res;
    std::optional<std::uint64_t> hit;
    const unsigned workers = std::max(1u, budget.threads);
    if (workers == 1 || end < 2 * workers) {
        hit = scan(0, end);
    } else {
        // Each worker reports the first hit in its contiguous block; the minimum wins.
        std::vector<std::optional<std::uint64_t>> found(workers);
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        const std::uint64_t block = (end + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t from = std::min<std::uint64_t>(end, w * block);
            const std::uint64_t to = std::min<std::uint64_t>(end, from + block);
            pool.emplace_back([&, w, from, to] {
                try {
                    found[w] = scan(from, to);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
        for (const auto& f : found)
            if (f) { hit = f; break; }
    }
    res.allocations_checked = hit ? *hit + 1 : end;
    if (hit) {
        std::vector<std::size_t> owner(m);
        decode(*hit, n, owner);
        res.exists = true;
        res.allocation = Allocation(bundles_of(owner, n));
    }
    return res;
}

bool oracle_verify_strong(const Instance& inst, const Allocation& alloc, std::size_t c,
                          const OracleBudget& budget) {
    alloc.validate(inst);
    return ExhaustiveChecker(inst, c, budget).holds(Notion::Strong, alloc.bundles());
}

bool oracle_verify_weak(const Instance& inst, const Allocation& alloc, std::size_t c,
                        const OracleBudget& budget) {
    alloc.validate(inst);
    return ExhaustiveChecker(inst, c, budget).holds(Notion::Weak, alloc.bundles());
}

}  // namespace mdfa

#include "mdfa/verify.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>

#include "mdfa/error.hpp"

namespace mdfa {

std::string to_string(Notion notion) { return notion == Notion::Weak ? "weak" : "strong"; }

Notion parse_notion(const std::string& text) {
    if (text == "weak") return Notion::Weak;
    if (text == "strong") return Notion::Strong;
    throw std::invalid_argument("unknown fairness notion '" + text + "' (expected weak|strong)");
}

namespace {

std::vector<Value> bundle_profile(const Instance& inst, std::size_t agent, const ItemSet& items) {
    std::vector<Value> out(inst.n_dims(), 0);
    for (std::size_t g : items)
        for (std::size_t k = 0; k < inst.n_dims(); ++k) out[k] += inst.value(agent, g, k);
    return out;
}

bool is_subset(const ItemSet& sub, const ItemSet& sorted_super) {
    return std::all_of(sub.begin(), sub.end(), [&](std::size_t g) {
        return std::binary_search(sorted_super.begin(), sorted_super.end(), g);
    });
}

bool has_duplicates(ItemSet items) {
    std::sort(items.begin(), items.end());
    return std::adjacent_find(items.begin(), items.end()) != items.end();
}

struct BudgetExhausted {};

// Exact search for X subset of a bundle, |X| <= slots, covering every positive
// per-dimension deficit of one envier.
class RemovalSearch {
public:
    RemovalSearch(const Instance& inst, std::size_t envier, const ItemSet& bundle,
                  std::vector<Value> deficit, std::uint64_t budget)
        : inst_(inst), envier_(envier), items_(bundle), deficit_(std::move(deficit)),
          budget_(budget) {
        auto peak = [&](std::size_t g) {
            Value best = 0;
            for (std::size_t k = 0; k < inst_.n_dims(); ++k)
                best = std::max(best, inst_.value(envier_, g, k));
            return best;
        };
        std::stable_sort(items_.begin(), items_.end(),
                         [&](std::size_t a, std::size_t b) { return peak(a) > peak(b); });
    }

    /// Throws BudgetExhausted when the node budget runs out.
    std::optional<ItemSet> find(std::size_t slots) {
        chosen_.clear();
        if (!dfs(0, slots)) return std::nullopt;
        ItemSet out = chosen_;
        std::sort(out.begin(), out.end());
        return out;
    }

    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    bool covered() const {
        return std::all_of(deficit_.begin(), deficit_.end(), [](Value d) { return d <= 0; });
    }

    // Dimension k is coverable only if the `slots` largest remaining values reach its deficit.
    bool coverable(std::size_t pos, std::size_t slots) {
        for (std::size_t k = 0; k < deficit_.size(); ++k) {
            if (deficit_[k] <= 0) continue;
            scratch_.clear();
            for (std::size_t p = pos; p < items_.size(); ++p)
                scratch_.push_back(inst_.value(envier_, items_[p], k));
            const std::size_t take = std::min(slots, scratch_.size());
            std::partial_sort(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(take),
                              scratch_.end(), std::greater<>());
            const Value best = std::accumulate(
                scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(take), Value{0});
            if (best < deficit_[k]) return false;
        }
        return true;
    }

    bool helps(std::size_t g) const {
        for (std::size_t k = 0; k < deficit_.size(); ++k)
            if (deficit_[k] > 0 && inst_.value(envier_, g, k) > 0) return true;
        return false;
    }

    bool dfs(std::size_t pos, std::size_t slots) {
        if (++nodes_ > budget_) throw BudgetExhausted{};
        if (covered()) return true;
        if (slots == 0 || pos == items_.size()) return false;
        if (!coverable(pos, slots)) return false;
        const std::size_t g = items_[pos];
        if (helps(g)) {
            for (std::size_t k = 0; k < deficit_.size(); ++k) deficit_[k] -= inst_.value(envier_, g, k);
            chosen_.push_back(g);
            const bool ok = dfs(pos + 1, slots - 1);
            for (std::size_t k = 0; k < deficit_.size(); ++k) deficit_[k] += inst_.value(envier_, g, k);
            if (ok) return true;
            chosen_.pop_back();
        }
        return dfs(pos + 1, slots);
    }

    const Instance& inst_;
    std::size_t envier_;
    ItemSet items_;
    std::vector<Value> deficit_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    ItemSet chosen_;
    std::vector<Value> scratch_;
};

std::vector<Value> deficit_of(const Instance& inst, const Allocation& alloc, std::size_t i,
                              std::size_t other) {
    auto own = bundle_profile(inst, i, alloc.bundle(i));
    auto theirs = bundle_profile(inst, i, alloc.bundle(other));
    std::vector<Value> d(inst.n_dims());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = theirs[k] - own[k];
    return d;
}

}  // namespace

WeakVerdict verify_weak(const Instance& inst, const Allocation& alloc, std::size_t c) {
    alloc.validate(inst);
    WeakVerdict verdict;
    const std::size_t n = inst.n_agents();
    for (std::size_t i = 0; i < n; ++i) {
        const auto own = bundle_profile(inst, i, alloc.bundle(i));
        for (std::size_t other = 0; other < n; ++other) {
            if (other == i) continue;
            const ItemSet& envied = alloc.bundle(other);
            const auto theirs = bundle_profile(inst, i, envied);
            for (std::size_t k = 0; k < inst.n_dims(); ++k) {
                ItemSet ranked = envied;
                std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
                    return inst.value(i, a, k) > inst.value(i, b, k);
                });
                ranked.resize(std::min(c, ranked.size()));
                Value removed = 0;
                for (std::size_t g : ranked) removed += inst.value(i, g, k);
                if (own[k] >= theirs[k] - removed) {
                    std::sort(ranked.begin(), ranked.end());
                    verdict.witness.entries.push_back({i, other, k, std::move(ranked)});
                } else {
                    verdict.violations.push_back({i, other, k});
                }
            }
        }
    }
    verdict.satisfied = verdict.violations.empty();
    if (!verdict.satisfied) verdict.witness.entries.clear();
    return verdict;
}

StrongVerdict verify_strong(const Instance& inst, const Allocation& alloc, std::size_t c,
                            const StrongSearchOptions& options) {
    alloc.validate(inst);
    const std::size_t n = inst.n_agents();

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t other = 0; other < n; ++other)
            if (i != other) pairs.emplace_back(i, other);
    // Small envied bundles first: they are decided quickly and may refute early.
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
        return alloc.bundle(a.second).size() < alloc.bundle(b.second).size();
    });

    StrongVerdict verdict;
    std::optional<std::pair<std::size_t, std::size_t>> undecided;
    std::uint64_t undecided_nodes = 0;
    for (auto [i, other] : pairs) {
        RemovalSearch search(inst, i, alloc.bundle(other), deficit_of(inst, alloc, i, other),
                             options.node_budget);
        try {
            auto found = search.find(c);
            if (found) {
                verdict.witness.entries.push_back({i, other, std::move(*found)});
            } else {
                verdict.violations.push_back({i, other, Violation::npos});
            }
        } catch (const BudgetExhausted&) {
            if (!undecided) {
                undecided = std::make_pair(i, other);
                undecided_nodes = search.nodes();
            }
        }
        verdict.nodes += search.nodes();
    }

    auto by_pair = [](const auto& a, const auto& b) {
        return std::tie(a.envier, a.envied) < std::tie(b.envier, b.envied);
    };
    std::sort(verdict.violations.begin(), verdict.violations.end(), by_pair);
    std::sort(verdict.witness.entries.begin(), verdict.witness.entries.end(), by_pair);

    if (!verdict.violations.empty()) {
        verdict.satisfied = false;
        verdict.witness.entries.clear();
        return verdict;
    }
    if (undecided) {
        throw ResourceLimitExceeded("strong sEFc search for pair (" +
                                        std::to_string(undecided->first) + ", " +
                                        std::to_string(undecided->second) +
                                        ") exceeded its node budget",
                                    undecided_nodes, options.node_budget);
    }
    verdict.satisfied = true;
    return verdict;
}

std::size_t min_removal_size(const Instance& inst, const Allocation& alloc, std::size_t envier,
                             std::size_t envied, const StrongSearchOptions& options) {
    alloc.validate(inst);
    if (envier >= inst.n_agents() || envied >= inst.n_agents()) {
        throw IndexOutOfRange("agent index out of range");
    }
    if (envier == envied) throw PreconditionError("min_removal_size needs two distinct agents");
    const ItemSet& bundle = alloc.bundle(envied);
    const auto deficit = deficit_of(inst, alloc, envier, envied);
    for (std::size_t size = 0; size <= bundle.size(); ++size) {
        RemovalSearch search(inst, envier, bundle, deficit, options.node_budget);
        try {
            if (search.find(size)) return size;
        } catch (const BudgetExhausted&) {
            throw ResourceLimitExceeded("minimum removal search exceeded its node budget",
                                        search.nodes(), options.node_budget);
        }
    }
    // Removing the whole bundle always clears envy since valuations are nonnegative.
    throw std::logic_error("min_removal_size: full bundle failed to clear envy");
}

bool replay_weak_witness(const Instance& inst, const Allocation& alloc, std::size_t c,
                         const WeakWitness& witness) {
    alloc.validate(inst);
    const std::size_t n = inst.n_agents();
    const std::size_t dims = inst.n_dims();
    std::vector<bool> seen(n * n * dims, false);
    for (const auto& e : witness.entries) {
        if (e.envier >= n || e.envied >= n || e.envier == e.envied || e.dim >= dims) return false;
        const ItemSet& envied = alloc.bundle(e.envied);
        if (e.removal.size() > c || has_duplicates(e.removal) || !is_subset(e.removal, envied))
            return false;
        const Value own = bundle_value(inst, e.envier, alloc.bundle(e.envier), e.dim);
        const Value rest = bundle_value(inst, e.envier, envied, e.dim) -
                           bundle_value(inst, e.envier, e.removal, e.dim);
        if (own < rest) return false;
        seen[(e.envier * n + e.envied) * dims + e.dim] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t other = 0; other < n; ++other)
            for (std::size_t k = 0; k < dims; ++k)
                if (i != other && !seen[(i * n + other) * dims + k]) return false;
    return true;
}

bool replay_strong_witness(const Instance& inst, const Allocation& alloc, std::size_t c,
                           const StrongWitness& witness) {
    alloc.validate(inst);
    const std::size_t n = inst.n_agents();
    std::vector<bool> seen(n * n, false);
    for (const auto& e : witness.entries) {
        if (e.envier >= n || e.envied >= n || e.envier == e.envied) return false;
        const ItemSet& envied = alloc.bundle(e.envied);
        if (e.removal.size() > c || has_duplicates(e.removal) || !is_subset(e.removal, envied))
            return false;
        for (std::size_t k = 0; k < inst.n_dims(); ++k) {
            const Value own = bundle_value(inst, e.envier, alloc.bundle(e.envier), k);
            const Value rest = bundle_value(inst, e.envier, envied, k) -
                               bundle_value(inst, e.envier, e.removal, k);
            if (own < rest) return false;
        }
        seen[e.envier * n + e.envied] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t other = 0; other < n; ++other)
            if (i != other && !seen[i * n + other]) return false;
    return true;
}

}  // namespace mdfa

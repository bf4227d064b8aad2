#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mdfa {

using Value = std::int64_t;
using ItemSet = std::vector<std::size_t>;  // sorted, duplicate-free item indices

/// An MDFA instance: n agents, m items, l dimensions and a nonnegative integer
/// valuation v[i][j][k]. Immutable after construction.
class Instance {
public:
    Instance() = default;

    /// valuations[i][j][k]. Throws InvalidInstance on ragged shapes or negative entries.
    Instance(std::size_t n_agents, std::size_t n_dims,
             const std::vector<std::vector<std::vector<Value>>>& valuations,
             std::vector<std::string> item_names = {});

    /// Identical agents sharing one matrix valuations[j][k].
    static Instance identical(std::size_t n_agents, std::size_t n_dims,
                              const std::vector<std::vector<Value>>& valuations,
                              std::vector<std::string> item_names = {});

    std::size_t n_agents() const noexcept { return n_agents_; }
    std::size_t n_items() const noexcept { return n_items_; }
    std::size_t n_dims() const noexcept { return n_dims_; }

    Value value(std::size_t agent, std::size_t item, std::size_t dim) const noexcept {
        return values_[(agent * n_items_ + item) * n_dims_ + dim];
    }
    /// Bounds-checked variant of value().
    Value at(std::size_t agent, std::size_t item, std::size_t dim) const;

    bool is_identical() const noexcept { return identical_; }
    bool is_binary() const noexcept { return v_max_ <= 1; }
    Value v_max() const noexcept { return v_max_; }

    const std::vector<std::string>& item_names() const noexcept { return item_names_; }

    /// Agent-major 3-D copy of the valuation tensor.
    std::vector<std::vector<std::vector<Value>>> tensor() const;

    bool operator==(const Instance& other) const = default;

private:
    std::size_t n_agents_ = 1;
    std::size_t n_items_ = 0;
    std::size_t n_dims_ = 1;
    std::vector<Value> values_;
    std::vector<std::string> item_names_;
    bool identical_ = true;
    Value v_max_ = 0;
};

/// A complete allocation: bundles[i] is the sorted item set of agent i.
class Allocation {
public:
    Allocation() = default;
    explicit Allocation(std::vector<ItemSet> bundles);

    /// Builds an allocation from owner[j] = agent receiving item j.
    static Allocation from_owners(std::size_t n_agents, const std::vector<std::size_t>& owner);

    std::size_t n_agents() const noexcept { return bundles_.size(); }
    const ItemSet& bundle(std::size_t agent) const { return bundles_.at(agent); }
    const std::vector<ItemSet>& bundles() const noexcept { return bundles_; }

    /// owner[j] for every item; requires a valid allocation of an m-item instance.
    std::vector<std::size_t> owners(std::size_t n_items) const;

    /// Throws InvalidAllocation unless this is a partition of the instance's items
    /// into exactly n_agents bundles.
    void validate(const Instance& inst) const;

    bool operator==(const Allocation& other) const = default;

private:
    std::vector<ItemSet> bundles_;
};

/// v_i(S)_k.
Value bundle_value(const Instance& inst, std::size_t agent, const ItemSet& items, std::size_t dim);

/// Round-robin by item index: item j goes to agent j mod n.
Allocation round_robin(std::size_t n_agents, std::size_t n_items);

std::string to_string(const ItemSet& items);

}  // namespace mdfa

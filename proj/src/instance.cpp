#include "mdfa/instance.hpp"

#include <algorithm>
#include <sstream>

#include "mdfa/error.hpp"

namespace mdfa {

Instance::Instance(std::size_t n_agents, std::size_t n_dims,
                   const std::vector<std::vector<std::vector<Value>>>& valuations,
                   std::vector<std::string> item_names)
    : n_agents_(n_agents), n_dims_(n_dims), item_names_(std::move(item_names)) {
    if (n_agents == 0) throw InvalidInstance("instance needs at least one agent");
    if (n_dims == 0) throw InvalidInstance("instance needs at least one dimension");
    if (valuations.size() != n_agents) {
        throw InvalidInstance("valuation tensor has " + std::to_string(valuations.size()) +
                              " agent slices, expected " + std::to_string(n_agents));
    }
    n_items_ = valuations.front().size();
    values_.reserve(n_agents * n_items_ * n_dims);
    for (std::size_t i = 0; i < n_agents; ++i) {
        if (valuations[i].size() != n_items_) {
            throw InvalidInstance("agent " + std::to_string(i) + " values " +
                                  std::to_string(valuations[i].size()) + " items, expected " +
                                  std::to_string(n_items_));
        }
        for (std::size_t j = 0; j < n_items_; ++j) {
            const auto& row = valuations[i][j];
            if (row.size() != n_dims) {
                throw InvalidInstance("valuation of agent " + std::to_string(i) + " for item " +
                                      std::to_string(j) + " has " + std::to_string(row.size()) +
                                      " dimensions, expected " + std::to_string(n_dims));
            }
            for (Value v : row) {
                if (v < 0) throw InvalidInstance("valuations must be nonnegative integers");
                v_max_ = std::max(v_max_, v);
                values_.push_back(v);
            }
        }
    }
    if (!item_names_.empty() && item_names_.size() != n_items_) {
        throw InvalidInstance("item name list length does not match item count");
    }
    const std::size_t slice = n_items_ * n_dims_;
    identical_ = true;
    for (std::size_t i = 1; i < n_agents_ && identical_; ++i) {
        identical_ = std::equal(values_.begin(), values_.begin() + slice,
                                values_.begin() + i * slice);
    }
}

Instance Instance::identical(std::size_t n_agents, std::size_t n_dims,
                             const std::vector<std::vector<Value>>& valuations,
                             std::vector<std::string> item_names) {
    std::vector<std::vector<std::vector<Value>>> tensor(n_agents, valuations);
    return Instance(n_agents, n_dims, tensor, std::move(item_names));
}

Value Instance::at(std::size_t agent, std::size_t item, std::size_t dim) const {
    if (agent >= n_agents_ || item >= n_items_ || dim >= n_dims_) {
        throw IndexOutOfRange("valuation index (" + std::to_string(agent) + ", " +
                              std::to_string(item) + ", " + std::to_string(dim) +
                              ") out of range");
    }
    return value(agent, item, dim);
}

std::vector<std::vector<std::vector<Value>>> Instance::tensor() const {
    std::vector<std::vector<std::vector<Value>>> out(
        n_agents_, std::vector<std::vector<Value>>(n_items_, std::vector<Value>(n_dims_)));
    for (std::size_t i = 0; i < n_agents_; ++i)
        for (std::size_t j = 0; j < n_items_; ++j)
            for (std::size_t k = 0; k < n_dims_; ++k) out[i][j][k] = value(i, j, k);
    return out;
}

Allocation::Allocation(std::vector<ItemSet> bundles) : bundles_(std::move(bundles)) {
    for (auto& b : bundles_) std::sort(b.begin(), b.end());
}

Allocation Allocation::from_owners(std::size_t n_agents, const std::vector<std::size_t>& owner) {
    std::vector<ItemSet> bundles(n_agents);
    for (std::size_t j = 0; j < owner.size(); ++j) {
        if (owner[j] >= n_agents) throw InvalidAllocation("owner index out of range");
        bundles[owner[j]].push_back(j);
    }
    return Allocation(std::move(bundles));
}

std::vector<std::size_t> Allocation::owners(std::size_t n_items) const {
    std::vector<std::size_t> owner(n_items, bundles_.size());
    for (std::size_t i = 0; i < bundles_.size(); ++i)
        for (std::size_t g : bundles_[i])
            if (g < n_items) owner[g] = i;
    return owner;
}

void Allocation::validate(const Instance& inst) const {
    if (bundles_.size() != inst.n_agents()) {
        throw InvalidAllocation("allocation has " + std::to_string(bundles_.size()) +
                                " bundles, instance has " + std::to_string(inst.n_agents()) +
                                " agents");
    }
    std::vector<bool> seen(inst.n_items(), false);
    std::size_t count = 0;
    for (const auto& b : bundles_) {
        for (std::size_t g : b) {
            if (g >= inst.n_items()) {
                throw InvalidAllocation("item " + std::to_string(g) + " does not exist");
            }
            if (seen[g]) throw InvalidAllocation("item " + std::to_string(g) + " allocated twice");
            seen[g] = true;
            ++count;
        }
    }
    if (count != inst.n_items()) {
        throw InvalidAllocation("allocation leaves " + std::to_string(inst.n_items() - count) +
                                " item(s) unallocated");
    }
}

Value bundle_value(const Instance& inst, std::size_t agent, const ItemSet& items, std::size_t dim) {
    if (agent >= inst.n_agents()) throw IndexOutOfRange("agent index out of range");
    if (dim >= inst.n_dims()) throw IndexOutOfRange("dimension index out of range");
    Value total = 0;
    for (std::size_t g : items) {
        if (g >= inst.n_items()) throw IndexOutOfRange("item index out of range");
        total += inst.value(agent, g, dim);
    }
    return total;
}

Allocation round_robin(std::size_t n_agents, std::size_t n_items) {
    std::vector<ItemSet> bundles(n_agents);
    for (std::size_t j = 0; j < n_items; ++j) bundles[j % n_agents].push_back(j);
    return Allocation(std::move(bundles));
}

std::string to_string(const ItemSet& items) {
    std::ostringstream os;
    os << '{';
    for (std::size_t t = 0; t < items.size(); ++t) os << (t ? "," : "") << items[t];
    os << '}';
    return os.str();
}

}  // namespace mdfa

#include "mdfa/dp.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <thread>
#include <unordered_map>
#include <vector>

#include "mdfa/error.hpp"

namespace mdfa {

namespace {

using State = std::vector<Value>;

struct StateHash {
    std::size_t operator()(const State& s) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (Value v : s) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

struct Back {
    std::uint32_t prev;
    std::uint32_t agent;
};

struct LayeredDp {
    std::vector<std::vector<Back>> backs;  // backs[t][s]: how state s of layer t+1 was reached
    std::vector<State> last;               // final layer, in discovery order
    std::uint64_t generated = 0;
};

// Breadth-first reachability over item prefixes with per-layer deduplication.
// Discovery order is fixed (previous-layer order, then agent index), so the
// result is deterministic.
template <class Step>
LayeredDp run_layers(State start, const ItemSet& items, std::size_t n_agents, Step step,
                     std::uint64_t cap) {
    LayeredDp dp;
    dp.last.push_back(std::move(start));
    dp.generated = 1;
    for (std::size_t item : items) {
        std::unordered_map<State, std::uint32_t, StateHash> seen;
        std::vector<State> next;
        std::vector<Back> back;
        for (std::size_t s = 0; s < dp.last.size(); ++s) {
            for (std::size_t a = 0; a < n_agents; ++a) {
                State ns = step(dp.last[s], item, a);
                auto [it, inserted] = seen.try_emplace(ns, static_cast<std::uint32_t>(next.size()));
                if (!inserted) continue;
                next.push_back(std::move(ns));
                back.push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(a)});
                if (next.size() > cap) {
                    throw ResourceLimitExceeded("DP layer exceeded the state cap", next.size(), cap);
                }
            }
        }
        dp.generated += next.size();
        dp.backs.push_back(std::move(back));
        dp.last = std::move(next);
    }
    return dp;
}

// owner[items[t]] for the path ending at state `idx` of the final layer.
void reconstruct(const LayeredDp& dp, const ItemSet& items, std::size_t idx,
                 std::vector<std::size_t>& owner) {
    for (std::size_t t = items.size(); t-- > 0;) {
        const Back b = dp.backs[t][idx];
        owner[items[t]] = b.agent;
        idx = b.prev;
    }
}

// (V, T) layout: V[i][o][k] then T[i][o][k][s] (descending, zero padded).
struct WeakLayout {
    std::size_t n, dims, c;
    std::size_t v_size() const { return n * n * dims; }
    std::size_t size() const { return v_size() * (1 + c); }
    std::size_t v(std::size_t i, std::size_t o, std::size_t k) const { return (i * n + o) * dims + k; }
    std::size_t t(std::size_t i, std::size_t o, std::size_t k) const { return v_size() + v(i, o, k) * c; }
};

State weak_step(const Instance& inst, const WeakLayout& lay, const State& s, std::size_t item,
                std::size_t agent) {
    State out = s;
    for (std::size_t i = 0; i < lay.n; ++i) {
        for (std::size_t k = 0; k < lay.dims; ++k) {
            const Value val = inst.value(i, item, k);
            out[lay.v(i, agent, k)] += val;
            if (lay.c == 0) continue;
            Value* top = out.data() + lay.t(i, agent, k);
            std::size_t pos = 0;
            while (pos < lay.c && top[pos] >= val) ++pos;
            if (pos == lay.c) continue;
            for (std::size_t q = lay.c - 1; q > pos; --q) top[q] = top[q - 1];
            top[pos] = val;
        }
    }
    return out;
}

bool weak_final_ok(const WeakLayout& lay, const State& s) {
    for (std::size_t i = 0; i < lay.n; ++i) {
        for (std::size_t o = 0; o < lay.n; ++o) {
            if (o == i) continue;
            for (std::size_t k = 0; k < lay.dims; ++k) {
                Value removable = 0;
                for (std::size_t q = 0; q < lay.c; ++q) removable += s[lay.t(i, o, k) + q];
                if (s[lay.v(i, i, k)] < s[lay.v(i, o, k)] - removable) return false;
            }
        }
    }
    return true;
}

ItemSet all_items(std::size_t m) {
    ItemSet items(m);
    for (std::size_t j = 0; j < m; ++j) items[j] = j;
    return items;
}

WeakLayout weak_layout(const Instance& inst, std::size_t c) {
    // More than m top slots can never be filled.
    return {inst.n_agents(), inst.n_dims(), std::min(c, inst.n_items())};
}

}  // namespace

ExistenceResult exists_weak(const Instance& inst, std::size_t c, const DpOptions& options) {
    const WeakLayout lay = weak_layout(inst, c);
    const ItemSet items = all_items(inst.n_items());
    auto step = [&](const State& s, std::size_t item, std::size_t agent) {
        return weak_step(inst, lay, s, item, agent);
    };
    const LayeredDp dp = run_layers(State(lay.size(), 0), items, lay.n, step, options.state_cap);

    ExistenceResult res;
    res.states = dp.generated;
    for (std::size_t s = 0; s < dp.last.size(); ++s) {
        if (!weak_final_ok(lay, dp.last[s])) continue;
        std::vector<std::size_t> owner(inst.n_items());
        reconstruct(dp, items, s, owner);
        res.exists = true;
        res.allocation = Allocation::from_owners(lay.n, owner);
        return res;
    }
    return res;
}

std::uint64_t reachable_state_count(const Instance& inst, std::size_t c, std::size_t prefix,
                                    const DpOptions& options) {
    if (prefix > inst.n_items()) throw IndexOutOfRange("prefix length exceeds item count");
    const WeakLayout lay = weak_layout(inst, c);
    const ItemSet items = all_items(prefix);
    auto step = [&](const State& s, std::size_t item, std::size_t agent) {
        return weak_step(inst, lay, s, item, agent);
    };
    return run_layers(State(lay.size(), 0), items, lay.n, step, options.state_cap).last.size();
}

namespace {

// owner code per item: 0 = not pledged, p + 1 = pledged into agent p's bundle.
using Pledge = std::vector<std::uint8_t>;

struct PartitionOutcome {
    enum class Kind { NotFound, Found, CapExceeded } kind = Kind::NotFound;
    std::vector<std::size_t> owner;
    std::uint64_t states = 0;
};

class StrongSearch {
public:
    StrongSearch(const Instance& inst, std::size_t c, const DpOptions& options)
        : inst_(inst), c_(c), options_(options), n_(inst.n_agents()), dims_(inst.n_dims()) {}

    PartitionOutcome evaluate(const Pledge& pledge) const {
        PartitionOutcome out;
        std::vector<ItemSet> pledged(n_);
        ItemSet rest;
        for (std::size_t j = 0; j < pledge.size(); ++j) {
            if (pledge[j] == 0) rest.push_back(j);
            else pledged[pledge[j] - 1].push_back(j);
        }

        // removal[q][p]: value vectors (for q) of every Y subset of X_p with |Y| <= c.
        std::vector<std::vector<std::vector<std::vector<Value>>>> removal(
            n_, std::vector<std::vector<std::vector<Value>>>(n_));
        for (std::size_t q = 0; q < n_; ++q)
            for (std::size_t p = 0; p < n_; ++p)
                if (q != p) removal[q][p] = subset_values(q, pledged[p]);

        State start(n_ * n_ * dims_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t o = 0; o < n_; ++o)
                for (std::size_t g : pledged[o])
                    for (std::size_t k = 0; k < dims_; ++k) start[idx(i, o, k)] += inst_.value(i, g, k);

        auto step = [&](const State& s, std::size_t item, std::size_t agent) {
            State ns = s;
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t k = 0; k < dims_; ++k) ns[idx(i, agent, k)] += inst_.value(i, item, k);
            return ns;
        };
        LayeredDp dp;
        try {
            dp = run_layers(std::move(start), rest, n_, step, options_.state_cap);
        } catch (const ResourceLimitExceeded&) {
            out.kind = PartitionOutcome::Kind::CapExceeded;
            return out;
        }
        out.states = dp.generated;
        for (std::size_t s = 0; s < dp.last.size(); ++s) {
            if (!final_ok(dp.last[s], removal)) continue;
            out.kind = PartitionOutcome::Kind::Found;
            out.owner.assign(inst_.n_items(), 0);
            for (std::size_t p = 0; p < n_; ++p)
                for (std::size_t g : pledged[p]) out.owner[g] = p;
            reconstruct(dp, rest, s, out.owner);
            return out;
        }
        return out;
    }

private:
    std::size_t idx(std::size_t i, std::size_t o, std::size_t k) const { return (i * n_ + o) * dims_ + k; }

    std::vector<std::vector<Value>> subset_values(std::size_t agent, const ItemSet& items) const {
        std::vector<std::vector<Value>> out;
        std::vector<Value> acc(dims_, 0);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
            out.push_back(acc);
            if (left == 0) return;
            for (std::size_t t = from; t < items.size(); ++t) {
                for (std::size_t k = 0; k < dims_; ++k) acc[k] += inst_.value(agent, items[t], k);
                rec(t + 1, left - 1);
                for (std::size_t k = 0; k < dims_; ++k) acc[k] -= inst_.value(agent, items[t], k);
            }
        };
        rec(0, c_);
        return out;
    }

    bool final_ok(const State& v,
                  const std::vector<std::vector<std::vector<std::vector<Value>>>>& removal) const {
        for (std::size_t q = 0; q < n_; ++q) {
            for (std::size_t p = 0; p < n_; ++p) {
                if (q == p) continue;
                const bool covered = std::any_of(
                    removal[q][p].begin(), removal[q][p].end(), [&](const std::vector<Value>& y) {
                        for (std::size_t k = 0; k < dims_; ++k)
                            if (v[idx(q, q, k)] < v[idx(q, p, k)] - y[k]) return false;
                        return true;
                    });
                if (!covered) return false;
            }
        }
        return true;
    }

    const Instance& inst_;
    std::size_t c_;
    const DpOptions& options_;
    std::size_t n_;
    std::size_t dims_;
};

}  // namespace

ExistenceResult exists_strong(const Instance& inst, std::size_t c, const DpOptions& options) {
    const std::size_t n = inst.n_agents();
    const std::size_t m = inst.n_items();
    ExistenceResult res;
    if (m <= n * c) {
        res.exists = true;
        res.allocation = round_robin(n, m);
        return res;
    }
    if (n > std::numeric_limits<std::uint8_t>::max() - 1) {
        throw PreconditionError("strong existence decider supports at most 254 agents");
    }

    const StrongSearch search(inst, c, options);
    const std::size_t per_agent = (n - 1) * c;
    const unsigned workers = std::max(1u, options.threads);
    constexpr std::size_t chunk_size = 64;
    std::uint64_t enumerated = 0;

    std::vector<Pledge> chunk;
    bool cap_hit = false;
    bool done = false;

    // Evaluates the chunk; returns true once a witness is found (the lowest-index one).
    auto flush = [&]() {
        std::vector<PartitionOutcome> outcomes(chunk.size());
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> best{chunk.size()};
        auto work = [&] {
            for (;;) {
                const std::size_t t = next.fetch_add(1);
                if (t >= chunk.size() || t > best.load()) return;
                outcomes[t] = search.evaluate(chunk[t]);
                if (outcomes[t].kind == PartitionOutcome::Kind::Found) {
                    std::size_t cur = best.load();
                    while (t < cur && !best.compare_exchange_weak(cur, t)) {}
                }
            }
        };
        if (workers == 1 || chunk.size() == 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
            for (auto& th : pool) th.join();
        }
        const std::size_t found = best.load();
        const std::size_t counted = std::min(found + 1, chunk.size());
        res.families += counted;
        for (std::size_t t = 0; t < counted; ++t) {
            res.states += outcomes[t].states;
            if (outcomes[t].kind == PartitionOutcome::Kind::CapExceeded) cap_hit = true;
        }
        if (found < chunk.size()) {
            res.exists = true;
            res.allocation = Allocation::from_owners(n, outcomes[found].owner);
            done = true;
        }
        chunk.clear();
    };

    Pledge pledge(m, 0);
    std::vector<std::size_t> load(n, 0);
    std::function<void(std::size_t)> enumerate = [&](std::size_t j) {
        if (done) return;
        if (j == m) {
            if (++enumerated > options.family_cap) {
                flush();
                if (done) return;
                throw ResourceLimitExceeded("strong decider exceeded the removal-family cap",
                                            enumerated, options.family_cap);
            }
            chunk.push_back(pledge);
            if (chunk.size() >= chunk_size) flush();
            return;
        }
        enumerate(j + 1);  // item j unpledged
        for (std::size_t p = 0; p < n && !done; ++p) {
            if (load[p] == per_agent) continue;
            pledge[j] = static_cast<std::uint8_t>(p + 1);
            ++load[p];
            enumerate(j + 1);
            --load[p];
            pledge[j] = 0;
        }
    };
    enumerate(0);
    if (!done && !chunk.empty()) flush();

    if (!res.exists && cap_hit) {
        throw ResourceLimitExceeded("strong decider DP exceeded the state cap", options.state_cap,
                                    options.state_cap);
    }
    return res;
}

}  // namespace mdfa

#include "mdfa/allocators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mdfa/error.hpp"

namespace mdfa {

namespace {

Rational r(Value v) { return Rational(v); }

Value column_sum(const Instance& inst, std::size_t agent, std::size_t dim) {
    Value s = 0;
    for (std::size_t j = 0; j < inst.n_items(); ++j) s += inst.value(agent, j, dim);
    return s;
}

ItemSet merge(std::initializer_list<const ItemSet*> parts) {
    ItemSet out;
    for (const ItemSet* p : parts) out.insert(out.end(), p->begin(), p->end());
    std::sort(out.begin(), out.end());
    return out;
}

void require_two_agents(const Instance& inst, const char* method) {
    if (inst.n_agents() != 2) {
        throw PreconditionError(std::string(method) + " needs exactly 2 agents, instance has " +
                                std::to_string(inst.n_agents()));
    }
}

void self_check(const Instance& inst, const AllocatorResult& res) {
    if (!replay_strong_witness(inst, res.allocation, res.trace.guarantee_c, res.witness)) {
        throw std::logic_error("allocator output failed its own strong sEFc witness replay");
    }
}

// Shared rounding for both two-agent methods: x_j is agent 1's share of item j.
AllocatorResult round_two_agent_vertex(const Instance& inst, const std::vector<Rational>& x,
                                       AllocatorKind kind, std::size_t guarantee) {
    const Rational half(1, 2);
    AllocatorResult res;
    res.trace.integral.assign(2, {});
    res.trace.fractional.assign(2, {});
    res.trace.guarantee_c = guarantee;
    res.fractional.source = kind;
    res.fractional.shares.assign(2, std::vector<Rational>(inst.n_items()));
    for (std::size_t j = 0; j < inst.n_items(); ++j) {
        const Rational& xj = x[j];
        res.fractional.shares[0][j] = xj;
        res.fractional.shares[1][j] = Rational(1) - xj;
        if (xj == Rational(1)) res.trace.integral[0].push_back(j);
        else if (xj.is_zero()) res.trace.integral[1].push_back(j);
        else if (xj >= half) res.trace.fractional[0].push_back(j);
        else res.trace.fractional[1].push_back(j);
    }
    const auto& t = res.trace;
    res.allocation = Allocation({merge({&t.integral[0], &t.fractional[0]}),
                                 merge({&t.integral[1], &t.fractional[1]})});
    res.witness.entries = {{0, 1, t.fractional[1]}, {1, 0, t.fractional[0]}};
    return res;
}

}  // namespace

LinearProgram two_agent_lp(const Instance& inst) {
    require_two_agents(inst, "two-agent LP");
    const std::size_t m = inst.n_items();
    LinearProgram lp(m);
    for (std::size_t j = 0; j < m; ++j) lp.set_bounds(j, 0, Rational(1));

    // Agent 1's first dimension is the objective, not a constraint.
    std::vector<Rational> obj(m);
    for (std::size_t j = 0; j < m; ++j) obj[j] = r(2 * inst.value(0, j, 0));
    lp.set_objective(obj, r(-column_sum(inst, 0, 0)));

    for (std::size_t k = 1; k < inst.n_dims(); ++k) {
        std::vector<Rational> row(m);
        for (std::size_t j = 0; j < m; ++j) row[j] = r(2 * inst.value(0, j, k));
        lp.add_constraint(row, Relation::GreaterEqual, r(column_sum(inst, 0, k)));
    }
    for (std::size_t k = 0; k < inst.n_dims(); ++k) {
        std::vector<Rational> row(m);
        for (std::size_t j = 0; j < m; ++j) row[j] = r(2 * inst.value(1, j, k));
        lp.add_constraint(row, Relation::LessEqual, r(column_sum(inst, 1, k)));
    }
    return lp;
}

LinearProgram identical_split_polytope(const Instance& inst) {
    const std::size_t m = inst.n_items();
    LinearProgram lp(m);
    for (std::size_t j = 0; j < m; ++j) lp.set_bounds(j, 0, Rational(1));
    for (std::size_t k = 0; k < inst.n_dims(); ++k) {
        std::vector<Rational> row(m);
        for (std::size_t j = 0; j < m; ++j) row[j] = r(2 * inst.value(0, j, k));
        lp.add_constraint(row, Relation::Equal, r(column_sum(inst, 0, k)));
    }
    return lp;
}

LinearProgram n_agent_polytope(const Instance& inst, const ItemSet& remaining) {
    const std::size_t n = inst.n_agents();
    const std::size_t width = remaining.size();
    LinearProgram lp(n * width);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t other = 0; other < n; ++other) {
            if (other == i) continue;
            for (std::size_t k = 0; k < inst.n_dims(); ++k) {
                std::vector<Rational> row(n * width);
                for (std::size_t t = 0; t < width; ++t) {
                    const Value v = inst.value(i, remaining[t], k);
                    row[i * width + t] += r(v);
                    row[other * width + t] -= r(v);
                }
                lp.add_constraint(row, Relation::GreaterEqual, 0);
            }
        }
    }
    for (std::size_t t = 0; t < width; ++t) {
        std::vector<Rational> row(n * width);
        for (std::size_t i = 0; i < n; ++i) row[i * width + t] = 1;
        lp.add_constraint(row, Relation::Equal, 1);
    }
    return lp;
}

std::vector<std::vector<ItemSet>> preassign_top_items(const Instance& inst, std::size_t per_slot,
                                                      ItemSet& remaining) {
    std::vector<std::vector<ItemSet>> z(inst.n_agents(), std::vector<ItemSet>(inst.n_dims()));
    for (std::size_t i = 0; i < inst.n_agents(); ++i) {
        for (std::size_t k = 0; k < inst.n_dims(); ++k) {
            for (std::size_t p = 0; p < per_slot; ++p) {
                if (remaining.empty()) {
                    throw PreconditionError("not enough items to pre-assign " +
                                            std::to_string(per_slot) + " per (agent, dimension)");
                }
                // remaining is sorted, so max_element's first hit is the lowest index.
                auto best = std::max_element(remaining.begin(), remaining.end(),
                                             [&](std::size_t a, std::size_t b) {
                                                 return inst.value(i, a, k) < inst.value(i, b, k);
                                             });
                z[i][k].push_back(*best);
                remaining.erase(best);
            }
            std::sort(z[i][k].begin(), z[i][k].end());
        }
    }
    return z;
}

AllocatorResult allocate_two_agents(const Instance& inst) {
    require_two_agents(inst, "two-agent allocation");
    const auto lp = two_agent_lp(inst);
    const auto solved = solve_to_vertex(lp);
    if (solved.status != LpStatus::Optimal) {
        throw std::logic_error("two-agent LP is " + to_string(solved.status) +
                               " although x = 1/2 is feasible");
    }
    auto res = round_two_agent_vertex(inst, solved.solution.point, AllocatorKind::TwoAgentLp,
                                      2 * inst.n_dims() - 1);
    self_check(inst, res);
    return res;
}

AllocatorResult allocate_two_agents_identical(const Instance& inst) {
    require_two_agents(inst, "identical two-agent allocation");
    if (!inst.is_identical()) {
        throw PreconditionError("identical two-agent allocation needs identical valuations");
    }
    const auto lp = identical_split_polytope(inst);
    const auto vertex = find_vertex(lp);
    if (vertex.status != LpStatus::Optimal) {
        throw std::logic_error("equal-split polytope is empty although x = 1/2 lies in it");
    }
    auto res = round_two_agent_vertex(inst, vertex.solution.point, AllocatorKind::TwoAgentIdentical,
                                      inst.n_dims());
    self_check(inst, res);
    return res;
}

AllocatorResult allocate_n_agents(const Instance& inst, const NAgentOptions& options) {
    const std::size_t n = inst.n_agents();
    const std::size_t m = inst.n_items();
    const std::size_t dims = inst.n_dims();
    const std::size_t c = n * n * dims * dims;
    const std::size_t per_slot = (n - 1) * (n - 1) * dims;

    AllocatorResult res;
    res.trace.guarantee_c = c;
    res.fractional.source = AllocatorKind::NAgentPreassign;
    res.fractional.shares.assign(n, std::vector<Rational>(m));

    const bool enough_to_preassign = m >= n * dims * per_slot;
    const bool use_lp = m > n * c || (options.force_preassignment && enough_to_preassign);
    if (!use_lp) {
        res.allocation = round_robin(n, m);
        res.trace.round_robin = true;
        res.trace.integral = res.allocation.bundles();
        res.trace.fractional.assign(n, {});
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t g : res.allocation.bundle(i)) res.fractional.shares[i][g] = 1;
            for (std::size_t other = 0; other < n; ++other)
                if (other != i) res.witness.entries.push_back({i, other, res.allocation.bundle(other)});
        }
        self_check(inst, res);
        return res;
    }

    ItemSet remaining(m);
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    res.trace.pre_assigned = preassign_top_items(inst, per_slot, remaining);
    res.trace.remaining = remaining;

    const auto polytope = n_agent_polytope(inst, remaining);
    const auto vertex = find_vertex(polytope);
    if (vertex.status != LpStatus::Optimal) {
        throw std::logic_error("proportional-envy polytope is empty although the uniform split lies in it");
    }
    const auto& x = vertex.solution.point;
    const std::size_t width = remaining.size();

    res.trace.integral.assign(n, {});
    ItemSet leftover;
    for (std::size_t t = 0; t < width; ++t) {
        const std::size_t g = remaining[t];
        bool integral = false;
        for (std::size_t i = 0; i < n; ++i) {
            res.fractional.shares[i][g] = x[i * width + t];
            if (x[i * width + t] == Rational(1)) {
                res.trace.integral[i].push_back(g);
                integral = true;
            }
        }
        if (!integral) leftover.push_back(g);
    }
    if (leftover.size() > n * (n - 1) * dims) {
        throw std::logic_error("polytope vertex has more fractional items than its rank allows");
    }
    res.trace.fractional.assign(n, {});
    for (std::size_t t = 0; t < leftover.size(); ++t) res.trace.fractional[t % n].push_back(leftover[t]);

    std::vector<ItemSet> bundles(n);
    std::vector<ItemSet> pledged(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& zk : res.trace.pre_assigned[i]) {
            pledged[i].insert(pledged[i].end(), zk.begin(), zk.end());
            for (std::size_t g : zk) res.fractional.shares[i][g] = 1;
        }
        pledged[i] = merge({&pledged[i], &res.trace.fractional[i]});
        bundles[i] = merge({&pledged[i], &res.trace.integral[i]});
    }
    res.allocation = Allocation(std::move(bundles));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t other = 0; other < n; ++other)
            if (other != i) res.witness.entries.push_back({i, other, pledged[other]});
    self_check(inst, res);
    return res;
}

}  // namespace mdfa

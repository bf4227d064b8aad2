#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "mdfa/allocators.hpp"
#include "mdfa/error.hpp"
#include "mdfa/generators.hpp"
#include "mdfa/oracle.hpp"
#include "mdfa/verify.hpp"
#include "support/brute.hpp"

using namespace mdfa;

namespace {

std::size_t total_size(const std::vector<ItemSet>& sets) {
    std::size_t s = 0;
    for (const auto& x : sets) s += x.size();
    return s;
}

// Shares sum to one per item and rounding matches the documented thresholds.
void check_two_agent_rounding(const AllocatorResult& res, std::size_t m) {
    const auto& sh = res.fractional.shares;
    REQUIRE(sh.size() == 2);
    for (std::size_t j = 0; j < m; ++j) {
        CHECK(sh[0][j] + sh[1][j] == Rational(1));
        const Rational& x = sh[0][j];
        const auto& t = res.trace;
        const auto in = [j](const ItemSet& s) { return std::binary_search(s.begin(), s.end(), j); };
        if (x == Rational(1)) CHECK(in(t.integral[0]));
        else if (x.is_zero()) CHECK(in(t.integral[1]));
        else if (x >= Rational(1, 2)) CHECK(in(t.fractional[0]));
        else CHECK(in(t.fractional[1]));
    }
}

void check_cover(const AllocatorResult& res, const Instance& inst) {
    CHECK_NOTHROW(res.allocation.validate(inst));
    std::vector<ItemSet> parts = res.trace.integral;
    parts.insert(parts.end(), res.trace.fractional.begin(), res.trace.fractional.end());
    for (const auto& row : res.trace.pre_assigned) parts.insert(parts.end(), row.begin(), row.end());
    ItemSet all;
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end());
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    CHECK(all.size() == inst.n_items());
}

}  // namespace

TEST_CASE("two-agent allocation examples") {
    const Instance t2 = table2_instance();
    const auto res = allocate_two_agents(t2);
    CHECK(res.trace.guarantee_c == 3);
    CHECK(verify_strong(t2, res.allocation, 3).satisfied);
    CHECK(replay_strong_witness(t2, res.allocation, 3, res.witness));
    check_two_agent_rounding(res, 3);

    const Instance single(2, 1, {{{4}}, {{7}}});
    const auto one = allocate_two_agents(single);
    CHECK(one.allocation.bundle(0).size() + one.allocation.bundle(1).size() == 1);
    CHECK(verify_strong(single, one.allocation, 1).satisfied);

    CHECK_THROWS_AS(allocate_two_agents(random_instance(1, 3, 4, 1, 3, false)), PreconditionError);
    CHECK_THROWS_AS(two_agent_lp(random_instance(1, 1, 4, 1, 3, false)), PreconditionError);
}

TEST_CASE("two-agent allocation on seeded random instances") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Instance inst = random_instance(seed, 2, 10, 2, 5, false);
        const auto res = allocate_two_agents(inst);
        CAPTURE(seed);
        CHECK(total_size(res.trace.fractional) <= 3);
        CHECK(verify_strong(inst, res.allocation, 3).satisfied);
        CHECK(oracle_verify_strong(inst, res.allocation, 3));
        CHECK(replay_strong_witness(inst, res.allocation, 3, res.witness));
        check_two_agent_rounding(res, 10);
        check_cover(res, inst);
    }
}

TEST_CASE("identical two-agent allocation") {
    const Instance t1 = table1_instance();
    const auto res = allocate_two_agents_identical(t1);
    CHECK(res.trace.guarantee_c == 3);
    CHECK(verify_strong(t1, res.allocation, 3).satisfied);
    CHECK(total_size(res.trace.fractional) <= 3);

    const Instance zeros = Instance::identical(2, 2, {{0, 0}, {0, 0}, {0, 0}});
    CHECK(verify_strong(zeros, allocate_two_agents_identical(zeros).allocation, 0).satisfied);

    const Instance diag = diagonal_instance(1);
    const auto d = allocate_two_agents_identical(diag);
    CHECK(verify_strong(diag, d.allocation, 3).satisfied);
    CHECK(oracle_exists(diag, {Notion::Strong, 3}).exists);
    CHECK_FALSE(oracle_exists(diag, {Notion::Strong, 1}).exists);

    CHECK_THROWS_AS(allocate_two_agents_identical(Instance(2, 1, {{{1}}, {{2}}})), PreconditionError);
    CHECK_THROWS_AS(allocate_two_agents_identical(Instance::identical(3, 1, {{1}})), PreconditionError);

    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const std::size_t dims = 1 + seed % 3;
        const Instance inst = random_instance(seed, 2, 2 + seed % 11, dims, 5, true);
        const auto r = allocate_two_agents_identical(inst);
        CAPTURE(seed);
        CHECK(total_size(r.trace.fractional) <= dims);
        CHECK(verify_strong(inst, r.allocation, dims).satisfied);
        check_two_agent_rounding(r, inst.n_items());
        check_cover(r, inst);
    }
}

TEST_CASE("pre-assignment picks top items with lowest-index ties") {
    const Instance inst(2, 2, {{{3, 0}, {5, 1}, {5, 1}, {1, 9}, {0, 9}},
                               {{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}}});
    ItemSet remaining{0, 1, 2, 3, 4};
    const auto z = preassign_top_items(inst, 1, remaining);
    CHECK(z[0][0] == ItemSet{1});
    CHECK(z[0][1] == ItemSet{3});
    CHECK(z[1][0] == ItemSet{0});
    CHECK(z[1][1] == ItemSet{2});
    CHECK(remaining == ItemSet{4});
    ItemSet few{0};
    CHECK_THROWS_AS(preassign_top_items(inst, 1, few), PreconditionError);
}

TEST_CASE("n-agent allocation examples") {
    const std::size_t m = 10;
    std::vector<std::vector<Value>> rows(m, {1});
    rows[0] = {2 * static_cast<Value>(m - 1)};
    const Instance motivating = Instance::identical(3, 1, rows);
    const auto res = allocate_n_agents(motivating);
    CHECK(res.trace.guarantee_c == 9);
    CHECK(res.trace.round_robin);
    CHECK(verify_strong(motivating, res.allocation, 9).satisfied);

    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const std::size_t dims = 1 + seed % 2;
        const Instance inst = random_instance(seed, 2, 4 + seed % 30, dims, 5, false);
        const auto r = allocate_n_agents(inst);
        CAPTURE(seed);
        CHECK(r.trace.guarantee_c == 4 * dims * dims);
        CHECK(verify_strong(inst, r.allocation, 4 * dims * dims).satisfied);
    }

    const Instance empty = Instance::identical(3, 2, {});
    CHECK(allocate_n_agents(empty).allocation == Allocation({{}, {}, {}}));
}

TEST_CASE("n-agent pre-assignment path invariants") {
    auto check_run = [](const Instance& inst, const AllocatorResult& r) {
        const std::size_t n = inst.n_agents(), dims = inst.n_dims();
        const std::size_t per_slot = (n - 1) * (n - 1) * dims;
        REQUIRE_FALSE(r.trace.round_robin);
        const std::size_t c = n * n * dims * dims;
        CHECK(r.trace.guarantee_c == c);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < dims; ++k) {
                CHECK(r.trace.pre_assigned[i][k].size() == per_slot);
                for (std::size_t g : r.trace.pre_assigned[i][k])
                    for (std::size_t h : r.trace.remaining) CHECK(inst.value(i, g, k) >= inst.value(i, h, k));
            }
        CHECK(total_size(r.trace.fractional) <= n * (n - 1) * dims);
        for (const auto& f : r.trace.fractional) CHECK(f.size() <= (n - 1) * dims);
        for (std::size_t g : r.trace.remaining) {
            Rational sum = 0;
            for (std::size_t i = 0; i < n; ++i) sum += r.fractional.shares[i][g];
            CHECK(sum == Rational(1));
        }
        check_cover(r, inst);
        CHECK(verify_strong(inst, r.allocation, c).satisfied);
        CHECK(replay_strong_witness(inst, r.allocation, c, r.witness));
    };

    // Natural path: m > n * c.
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const Instance inst = random_instance(seed, 3, 28 + seed % 13, 1, 6, false);
        check_run(inst, allocate_n_agents(inst));
    }
    // Forced path with two dimensions: 48 items fill the pre-assignment.
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Instance inst = random_instance(seed, 3, 60, 2, 5, false);
        NAgentOptions force;
        force.force_preassignment = true;
        const auto r = allocate_n_agents(inst, force);
        check_run(inst, r);
        CHECK(r.trace.remaining.size() == 12);
    }
    // Too few items to pre-assign: the option falls back to round robin.
    NAgentOptions force;
    force.force_preassignment = true;
    CHECK(allocate_n_agents(random_instance(3, 3, 40, 2, 5, false), force).trace.round_robin);
}

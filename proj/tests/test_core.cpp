#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "mdfa/error.hpp"
#include "mdfa/generators.hpp"
#include "mdfa/instance.hpp"
#include "mdfa/oracle.hpp"
#include "mdfa/random.hpp"
#include "mdfa/verify.hpp"
#include "support/brute.hpp"

using namespace mdfa;

namespace {

const Allocation kSplit({{0}, {1, 2}});

}  // namespace

TEST_CASE("instance construction validates shapes and values") {
    CHECK_THROWS_AS(Instance(0, 1, {}), InvalidInstance);
    CHECK_THROWS_AS(Instance(1, 0, {{{}}}), InvalidInstance);
    CHECK_THROWS_AS(Instance(2, 1, {{{1}}}), InvalidInstance);
    CHECK_THROWS_AS(Instance(1, 2, {{{1}}}), InvalidInstance);
    CHECK_THROWS_AS(Instance(1, 1, {{{-1}}}), InvalidInstance);
    CHECK_THROWS_AS(Instance(2, 1, {{{1}, {2}}, {{1}}}), InvalidInstance);
    CHECK_THROWS_AS(Instance::identical(2, 1, {{1}}, {"a", "b"}), InvalidInstance);

    const Instance same(2, 2, {{{1, 2}}, {{1, 2}}});
    CHECK(same.is_identical());
    CHECK(same.v_max() == 2);
    const Instance diff(2, 2, {{{1, 2}}, {{1, 3}}});
    CHECK_FALSE(diff.is_identical());
    CHECK(diff.v_max() == 3);
    CHECK_FALSE(diff.is_binary());
    CHECK(diff.tensor() == std::vector<std::vector<std::vector<Value>>>{{{1, 2}}, {{1, 3}}});
    CHECK_THROWS_AS(diff.at(2, 0, 0), IndexOutOfRange);
    CHECK_THROWS_AS(diff.at(0, 1, 0), IndexOutOfRange);
    CHECK_THROWS_AS(diff.at(0, 0, 2), IndexOutOfRange);
    CHECK(diff.at(1, 0, 1) == 3);
}

TEST_CASE("allocation validation") {
    const Instance inst = table2_instance();
    CHECK_NOTHROW(kSplit.validate(inst));
    CHECK_THROWS_AS(Allocation({{0}, {1}}).validate(inst), InvalidAllocation);
    CHECK_THROWS_AS(Allocation({{0, 1}, {1, 2}}).validate(inst), InvalidAllocation);
    CHECK_THROWS_AS(Allocation({{0}, {1, 3}}).validate(inst), InvalidAllocation);
    CHECK_THROWS_AS(Allocation({{0, 1, 2}}).validate(inst), InvalidAllocation);
    CHECK_THROWS_AS(verify_weak(inst, Allocation({{0}, {1}}), 1), InvalidAllocation);
    CHECK_THROWS_AS(verify_strong(inst, Allocation({{0}, {0, 1, 2}}), 1), InvalidAllocation);

    const auto a = Allocation::from_owners(2, {1, 0, 1});
    CHECK(a.bundle(0) == ItemSet{1});
    CHECK(a.bundle(1) == ItemSet{0, 2});
    CHECK(a.owners(3) == std::vector<std::size_t>{1, 0, 1});
    CHECK(round_robin(2, 5) == Allocation({{0, 2, 4}, {1, 3}}));
    CHECK(to_string(ItemSet{0, 3}) == "{0,3}");
}

TEST_CASE("bundle_value examples") {
    // Items and dimensions are 0-based here: g1 is item 0, dimension 1 is index 0.
    CHECK(bundle_value(table1_instance(), 0, {0, 1}, 0) == 2);
    CHECK(bundle_value(table2_instance(), 0, {1, 2}, 1) == 2);
    CHECK(bundle_value(table1_instance(), 1, {}, 2) == 0);
    CHECK_THROWS_AS(bundle_value(table1_instance(), 0, {3}, 0), IndexOutOfRange);
    CHECK_THROWS_AS(bundle_value(table1_instance(), 2, {0}, 0), IndexOutOfRange);
    CHECK_THROWS_AS(bundle_value(table1_instance(), 0, {0}, 3), IndexOutOfRange);
}

TEST_CASE("verify_weak examples") {
    const auto t1 = verify_weak(table1_instance(), kSplit, 1);
    CHECK_FALSE(t1.satisfied);
    // Agent 0 holding g1 = (1,1,0) against (1,1,2) minus the best single item: dimension 3 fails.
    bool dim3 = false;
    for (const auto& v : t1.violations) dim3 |= (v.envier == 0 && v.envied == 1 && v.dim == 2);
    CHECK(dim3);

    const auto t2 = verify_weak(table2_instance(), kSplit, 1);
    CHECK(t2.satisfied);
    CHECK(replay_weak_witness(table2_instance(), kSplit, 1, t2.witness));

    const Instance empty = Instance::identical(3, 2, {});
    const Allocation none({{}, {}, {}});
    for (std::size_t c : {0u, 1u, 5u}) {
        CHECK(verify_weak(empty, none, c).satisfied);
        CHECK(verify_strong(empty, none, c).satisfied);
    }
}

TEST_CASE("verify_weak breaks ties toward the lowest item index") {
    const Instance inst = Instance::identical(2, 1, {{0}, {2}, {2}, {2}});
    const auto res = verify_weak(inst, Allocation({{0}, {1, 2, 3}}), 2);
    REQUIRE_FALSE(res.satisfied);
    const auto ok = verify_weak(inst, Allocation({{0, 1}, {2, 3}}), 1);
    REQUIRE(ok.satisfied);
    for (const auto& e : ok.witness.entries)
        if (e.envier == 0) CHECK(e.removal == ItemSet{2});
}

TEST_CASE("verify_strong examples") {
    CHECK_FALSE(verify_strong(table2_instance(), kSplit, 1).satisfied);
    const auto two = verify_strong(table2_instance(), kSplit, 2);
    CHECK(two.satisfied);
    CHECK(replay_strong_witness(table2_instance(), kSplit, 2, two.witness));
    CHECK_FALSE(verify_strong(diagonal_instance(2), Allocation({{0, 1}, {2, 3, 4}}), 2).satisfied);
    const auto bad = verify_strong(table2_instance(), kSplit, 1);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].envier == 0);
    CHECK(bad.violations[0].envied == 1);
    CHECK(bad.violations[0].dim == Violation::npos);
}

TEST_CASE("min_removal_size examples") {
    CHECK(min_removal_size(table2_instance(), kSplit, 0, 1) == 2);
    CHECK(min_removal_size(table2_instance(), kSplit, 1, 0) == 0);
    CHECK(min_removal_size(diagonal_instance(1), kSplit, 0, 1) == 2);
    CHECK_THROWS_AS(min_removal_size(table2_instance(), kSplit, 0, 0), PreconditionError);
    CHECK_THROWS_AS(min_removal_size(table2_instance(), kSplit, 0, 2), IndexOutOfRange);
}

TEST_CASE("strong search reports undecided when its node budget is exhausted") {
    // Many small items: only removing many of them covers the deficit, so a tiny budget runs out.
    std::vector<std::vector<Value>> rows(16, std::vector<Value>{1, 1});
    const Instance inst = Instance::identical(2, 2, rows);
    std::vector<std::size_t> owner(16, 1);
    owner[0] = 0;
    const auto alloc = Allocation::from_owners(2, owner);
    StrongSearchOptions tiny;
    tiny.node_budget = 3;
    try {
        (void)verify_strong(inst, alloc, 14, tiny);
        FAIL("expected ResourceLimitExceeded");
    } catch (const ResourceLimitExceeded& e) {
        CHECK(e.limit() == 3);
    }
    CHECK(verify_strong(inst, alloc, 14).satisfied);
    CHECK_FALSE(verify_strong(inst, alloc, 13).satisfied);
    CHECK_THROWS_AS(min_removal_size(inst, alloc, 0, 1, tiny), ResourceLimitExceeded);
}

TEST_CASE("a proven violation wins over an undecided pair") {
    // Pair (0,1) is satisfiable but needs more nodes than the budget; pair (1,2) is
    // refuted at its root by the deficit bound and is searched later.
    const std::size_t m = 33;
    std::vector<std::vector<std::vector<Value>>> v(3, std::vector<std::vector<Value>>(m, {0}));
    v[0][0] = {5};
    for (std::size_t j = 1; j <= 16; ++j) v[0][j] = {1};
    for (std::size_t j = 17; j < m; ++j) v[1][j] = v[2][j] = {1};
    const Instance inst(3, 1, v);
    std::vector<std::size_t> owner(m, 2);
    owner[0] = 0;
    for (std::size_t j = 1; j <= 16; ++j) owner[j] = 1;
    const auto alloc = Allocation::from_owners(3, owner);
    StrongSearchOptions tiny;
    tiny.node_budget = 4;
    const auto res = verify_strong(inst, alloc, 14, tiny);
    CHECK_FALSE(res.satisfied);
    REQUIRE(res.violations.size() == 1);
    CHECK(res.violations[0].envier == 1);
    CHECK(res.violations[0].envied == 2);
}

TEST_CASE("witness replay rejects tampered witnesses") {
    const Instance inst = table2_instance();
    auto w = verify_strong(inst, kSplit, 2).witness;
    CHECK(replay_strong_witness(inst, kSplit, 2, w));
    CHECK_FALSE(replay_strong_witness(inst, kSplit, 1, w));
    auto missing = w;
    missing.entries.pop_back();
    CHECK_FALSE(replay_strong_witness(inst, kSplit, 2, missing));
    auto foreign = w;
    for (auto& e : foreign.entries)
        if (e.envier == 0) e.removal = {0};
    CHECK_FALSE(replay_strong_witness(inst, kSplit, 2, foreign));

    auto ww = verify_weak(inst, kSplit, 1).witness;
    CHECK(replay_weak_witness(inst, kSplit, 1, ww));
    ww.entries.front().removal.clear();
    CHECK_FALSE(replay_weak_witness(inst, kSplit, 1, ww));
}

TEST_CASE("verifier properties on random instances") {
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        const std::size_t n = 2 + seed % 2, m = 3 + seed % 6, dims = 1 + seed % 3;
        const Instance inst = random_instance(seed, n, m, dims, 4, seed % 4 == 0);
        Xoshiro256 rng(seed * 7919);
        std::vector<std::size_t> owner(m);
        for (auto& o : owner) o = rng.below(n);
        const auto alloc = Allocation::from_owners(n, owner);
        std::size_t largest = 0;
        for (const auto& b : alloc.bundles()) largest = std::max(largest, b.size());

        bool prev_weak = false, prev_strong = false;
        for (std::size_t c = 0; c <= m + 1; ++c) {
            const auto weak = verify_weak(inst, alloc, c);
            const auto strong = verify_strong(inst, alloc, c);
            CAPTURE(seed);
            CAPTURE(c);
            CHECK(weak.satisfied == oracle_verify_weak(inst, alloc, c));
            CHECK(strong.satisfied == oracle_verify_strong(inst, alloc, c));
            if (prev_weak) CHECK(weak.satisfied);
            if (prev_strong) CHECK(strong.satisfied);
            if (strong.satisfied) CHECK(weak.satisfied);
            if (weak.satisfied) CHECK(verify_strong(inst, alloc, dims * c).satisfied);
            if (c >= largest) CHECK(strong.satisfied);
            if (weak.satisfied) CHECK(replay_weak_witness(inst, alloc, c, weak.witness));
            if (strong.satisfied) CHECK(replay_strong_witness(inst, alloc, c, strong.witness));
            prev_weak = weak.satisfied;
            prev_strong = strong.satisfied;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t o = 0; o < n; ++o) {
                if (i == o) continue;
                const std::size_t k = min_removal_size(inst, alloc, i, o);
                // Least removal size, by trying every subset of the envied bundle.
                std::size_t best = alloc.bundle(o).size();
                const auto& b = alloc.bundle(o);
                for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << b.size()); ++mask) {
                    bool ok = true;
                    for (std::size_t d = 0; d < dims && ok; ++d) {
                        Value rest = bundle_value(inst, i, b, d);
                        for (std::size_t t = 0; t < b.size(); ++t)
                            if ((mask >> t) & 1) rest -= inst.value(i, b[t], d);
                        ok = bundle_value(inst, i, alloc.bundle(i), d) >= rest;
                    }
                    if (ok) best = std::min<std::size_t>(best, __builtin_popcountll(mask));
                }
                CHECK(k == best);
            }
    }
}

TEST_CASE("identical instances: verdicts invariant under agent relabelling") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const Instance inst = random_instance(seed, 3, 7, 2, 3, true);
        Xoshiro256 rng(seed);
        std::vector<std::size_t> owner(7);
        for (auto& o : owner) o = rng.below(3);
        std::vector<std::size_t> perm{0, 1, 2};
        do {
            std::vector<std::size_t> moved(7);
            for (std::size_t j = 0; j < 7; ++j) moved[j] = perm[owner[j]];
            const auto a = Allocation::from_owners(3, owner);
            const auto b = Allocation::from_owners(3, moved);
            for (std::size_t c = 0; c <= 3; ++c) {
                CHECK(verify_weak(inst, a, c).satisfied == verify_weak(inst, b, c).satisfied);
                CHECK(verify_strong(inst, a, c).satisfied == verify_strong(inst, b, c).satisfied);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("notion parsing") {
    CHECK(parse_notion("weak") == Notion::Weak);
    CHECK(parse_notion("strong") == Notion::Strong);
    CHECK(to_string(Notion::Strong) == "strong");
    CHECK_THROWS_AS(parse_notion("Strong"), std::invalid_argument);
}

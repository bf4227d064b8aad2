#include <doctest.h>

#include <climits>
#include <numeric>

#include "mdfa/allocators.hpp"
#include "mdfa/generators.hpp"
#include "mdfa/lp.hpp"
#include "mdfa/random.hpp"
#include "mdfa/rational.hpp"
#include "support/brute.hpp"

using namespace mdfa;

TEST_CASE("rationals stay in lowest terms") {
    const Rational a(6, -4);
    CHECK(a.numerator() == "-3");
    CHECK(a.denominator() == "2");
    CHECK(Rational(0, 5).denominator() == "1");
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse(Rational(5, 2).str()) == Rational(5, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK(Rational(INT64_MIN).str() == "-9223372036854775808");
    CHECK(Rational(INT64_MIN, -1).str() == "9223372036854775808");
    CHECK((Rational(INT64_MAX) + Rational(INT64_MAX)).str() == "18446744073709551614");
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(Rational(4, 2).is_integer());
    CHECK_FALSE(Rational(3, 2).is_integer());
    CHECK(Rational(-3, 7).sign() == -1);
    CHECK(Rational(1, 4).to_double() == doctest::Approx(0.25));
}

TEST_CASE("rational arithmetic matches cross-multiplication") {
    Xoshiro256 rng(2024);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::int64_t a = rng.between(-1000, 1000), b = rng.between(1, 1000);
        const std::int64_t c = rng.between(-1000, 1000), d = rng.between(1, 1000);
        const Rational x(a, b), y(c, d);
        CHECK(x + y == Rational(a * d + c * b, b * d));
        CHECK(x - y == Rational(a * d - c * b, b * d));
        CHECK(x * y == Rational(a * c, b * d));
        if (c != 0) CHECK(x / y == Rational(a * d, b * c));
        CHECK(Rational::parse(x.str()) == x);
        CHECK(((x < y) == (a * d < c * b)));
    }
}

TEST_CASE("simplex basics") {
    LinearProgram lp(1);
    lp.set_objective({1});
    lp.set_bounds(0, 0, Rational(1));
    auto res = solve_to_vertex(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.solution.point == std::vector<Rational>{1});
    CHECK(res.solution.objective_value == 1);
    CHECK(res.solution.is_vertex);

    LinearProgram unb(2);
    unb.set_objective({1, 1});
    unb.add_constraint({1, -1}, Relation::LessEqual, 3);
    CHECK(solve_to_vertex(unb).status == LpStatus::Unbounded);

    LinearProgram inf(2);
    inf.add_constraint({1, 1}, Relation::LessEqual, 1);
    inf.add_constraint({1, 1}, Relation::GreaterEqual, 2);
    CHECK(solve_to_vertex(inf).status == LpStatus::Infeasible);
    CHECK(find_vertex(inf).status == LpStatus::Infeasible);

    // Redundant equalities and negative lower bounds.
    LinearProgram eq(3);
    eq.set_objective({1, 2, 3});
    for (std::size_t v = 0; v < 3; ++v) eq.set_bounds(v, -2, Rational(5));
    eq.add_constraint({1, 1, 1}, Relation::Equal, 4);
    eq.add_constraint({2, 2, 2}, Relation::Equal, 8);
    eq.add_constraint({1, -1, 0}, Relation::GreaterEqual, Rational(-1, 2));
    res = solve_to_vertex(eq);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(eq.is_feasible(res.solution.point));
    CHECK(res.solution.is_vertex);
    Rational best = res.solution.objective_value;
    for (const auto& v : brute::enumerate_vertices(eq)) CHECK(eq.objective_value(v) <= best);

    CHECK_THROWS_AS(eq.add_constraint({1, 2}, Relation::Equal, 1), std::invalid_argument);
    CHECK_THROWS_AS(eq.set_bounds(0, 2, Rational(1)), std::invalid_argument);
    CHECK(to_string(LpStatus::Unbounded) == "unbounded");
}

TEST_CASE("Bland's rule terminates on the classic cycling example") {
    // Beale's LP cycles under the largest-coefficient rule.
    LinearProgram lp(4);
    lp.set_objective({Rational(3, 4), -20, Rational(1, 2), -6});
    lp.add_constraint({Rational(1, 4), -8, -1, 9}, Relation::LessEqual, 0);
    lp.add_constraint({Rational(1, 2), -12, Rational(-1, 2), 3}, Relation::LessEqual, 0);
    lp.add_constraint({0, 0, 1, 0}, Relation::LessEqual, 1);
    const auto res = solve_to_vertex(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.solution.objective_value == Rational(5, 4));
    CHECK(res.solution.is_vertex);
}

TEST_CASE("optimum agrees with exhaustive vertex enumeration") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        Xoshiro256 rng(seed);
        const std::size_t n = 2 + rng.below(3), rows = 1 + rng.below(3);
        LinearProgram lp(n);
        std::vector<Rational> obj;
        for (std::size_t v = 0; v < n; ++v) {
            obj.emplace_back(rng.between(-5, 5));
            lp.set_bounds(v, rng.between(-2, 0), Rational(rng.between(1, 4)));
        }
        lp.set_objective(obj, Rational(rng.between(-3, 3)));
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<Rational> row;
            for (std::size_t v = 0; v < n; ++v) row.emplace_back(rng.between(-4, 4));
            const auto rel = static_cast<Relation>(rng.below(3));
            lp.add_constraint(row, rel, Rational(rng.between(-3, 6)));
        }
        const auto verts = brute::enumerate_vertices(lp);
        const auto res = solve_to_vertex(lp);
        CAPTURE(seed);
        if (verts.empty()) {
            CHECK(res.status == LpStatus::Infeasible);
            continue;
        }
        REQUIRE(res.status == LpStatus::Optimal);
        Rational best = lp.objective_value(verts.front());
        for (const auto& v : verts) best = std::max(best, lp.objective_value(v));
        CHECK(res.solution.objective_value == best);
        CHECK(lp.is_feasible(res.solution.point));
        CHECK(is_vertex(lp, res.solution.point));
        CHECK(std::find(verts.begin(), verts.end(), res.solution.point) != verts.end());
        CHECK(res.solution.tight_set == active_constraints(lp, res.solution.point));

        const auto any = find_vertex(lp);
        REQUIRE(any.status == LpStatus::Optimal);
        CHECK(std::find(verts.begin(), verts.end(), any.solution.point) != verts.end());
    }
}

TEST_CASE("vertex audit") {
    LinearProgram box(3);
    for (std::size_t v = 0; v < 3; ++v) box.set_bounds(v, 0, Rational(1));
    const auto res = find_vertex(box);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(brute::count_fractional(res.solution.point) == 0);
    CHECK(res.solution.is_vertex);
    CHECK_FALSE(is_vertex(box, {Rational(1, 2), 0, 1}));
    CHECK(is_vertex(box, {1, 0, 1}));
    CHECK(active_constraints(box, {Rational(1, 2), 0, 1}).size() == 2);

    CHECK(rank({{1, 2}, {2, 4}}) == 1);
    CHECK(rank({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}) == 3);
    CHECK(rank({{0, 0}, {0, 0}}) == 0);
    CHECK(rank({}) == 0);
}

TEST_CASE("two-agent envy LP: nonnegative optimum and few fractional items") {
    const Instance t2 = table2_instance();
    const auto res = solve_to_vertex(two_agent_lp(t2));
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.solution.objective_value >= 0);
    CHECK(brute::count_fractional(res.solution.point) <= 2 * t2.n_dims() - 1);

    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const std::size_t dims = 1 + seed % 3;
        const Instance inst = random_instance(seed, 2, 4 + seed % 7, dims, 5, false);
        const auto lp = two_agent_lp(inst);
        const auto r = solve_to_vertex(lp);
        REQUIRE(r.status == LpStatus::Optimal);
        // x = 1/2 everywhere is feasible with objective 0.
        CHECK(lp.is_feasible(std::vector<Rational>(inst.n_items(), Rational(1, 2))));
        CHECK(r.solution.objective_value >= 0);
        CHECK(r.solution.is_vertex);
        CHECK(brute::count_fractional(r.solution.point) <= 2 * dims - 1);
    }
}

TEST_CASE("equal-split polytope vertices have at most l fractional coordinates") {
    const Instance t1 = table1_instance();
    const auto poly = identical_split_polytope(t1);
    const auto verts = brute::enumerate_vertices(poly);
    REQUIRE_FALSE(verts.empty());
    for (const auto& v : verts) CHECK(brute::count_fractional(v) <= 3);
    const auto res = find_vertex(poly);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(std::find(verts.begin(), verts.end(), res.solution.point) != verts.end());
    CHECK(brute::count_fractional(res.solution.point) <= 3);

    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const std::size_t dims = 1 + seed % 3;
        const Instance inst = random_instance(seed, 2, 3 + seed % 8, dims, 4, true);
        const auto r = find_vertex(identical_split_polytope(inst));
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.solution.is_vertex);
        CHECK(brute::count_fractional(r.solution.point) <= dims);
    }
}

TEST_CASE("proportional-envy polytope on the three-agent one-dimension example") {
    const std::size_t m = 10;
    std::vector<std::vector<Value>> rows(m, {1});
    rows[0] = {2 * static_cast<Value>(m - 1)};
    const Instance inst = Instance::identical(3, 1, rows);
    ItemSet all(m);
    std::iota(all.begin(), all.end(), 0);
    const auto poly = n_agent_polytope(inst, all);
    const auto res = find_vertex(poly);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.solution.is_vertex);
    std::size_t nonintegral_items = 0;
    for (std::size_t t = 0; t < m; ++t) {
        bool frac = false;
        for (std::size_t i = 0; i < 3; ++i) frac |= !res.solution.point[i * m + t].is_integer();
        nonintegral_items += frac;
    }
    CHECK(nonintegral_items <= 6);
}

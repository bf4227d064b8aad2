#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdfa/rational.hpp"

namespace mdfa {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
    std::vector<Rational> coeffs;
    Relation relation = Relation::LessEqual;
    Rational rhs;
};

/// Variable bound low <= x <= high; a missing high means +infinity.
struct VariableBound {
    Rational low;
    std::optional<Rational> high;
};

/// maximize objective . x + offset  subject to rows and variable bounds.
/// Every variable has a finite lower bound (default 0) so the polyhedron is pointed.
class LinearProgram {
public:
    explicit LinearProgram(std::size_t n_vars);

    std::size_t n_vars() const noexcept { return n_vars_; }
    std::size_t n_constraints() const noexcept { return rows_.size(); }

    void set_objective(std::vector<Rational> coeffs, Rational offset = 0);
    /// Returns the row index. Throws std::invalid_argument on a length mismatch.
    std::size_t add_constraint(std::vector<Rational> coeffs, Relation relation, Rational rhs);
    /// Throws std::invalid_argument unless low <= high.
    void set_bounds(std::size_t var, Rational low, std::optional<Rational> high);

    const std::vector<Rational>& objective() const noexcept { return objective_; }
    const Rational& objective_offset() const noexcept { return offset_; }
    const std::vector<LinearConstraint>& constraints() const noexcept { return rows_; }
    const std::vector<VariableBound>& bounds() const noexcept { return bounds_; }

    Rational objective_value(const std::vector<Rational>& x) const;
    /// Exact feasibility test, no tolerance.
    bool is_feasible(const std::vector<Rational>& x) const;

private:
    std::size_t n_vars_;
    std::vector<Rational> objective_;
    Rational offset_;
    std::vector<LinearConstraint> rows_;
    std::vector<VariableBound> bounds_;
};

/// One constraint active at a point: a row, or a variable's lower/upper bound.
struct ActiveConstraint {
    enum class Kind { Row, Lower, Upper };
    Kind kind;
    std::size_t index;
    bool operator==(const ActiveConstraint&) const = default;
};

struct BasicSolution {
    std::vector<Rational> point;
    Rational objective_value;
    std::vector<ActiveConstraint> tight_set;
    bool is_vertex = false;
    std::uint64_t pivots = 0;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus status);

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    BasicSolution solution;  // meaningful only when status == Optimal
};

struct SimplexOptions {
    /// Bland's rule cannot cycle, so hitting this is an internal error.
    std::uint64_t max_pivots = 5'000'000;
};

/// Two-phase primal simplex over exact rationals with Bland's rule. The optimum
/// returned is a basic solution, hence a vertex of the feasible polyhedron.
LpResult solve_to_vertex(const LinearProgram& lp, const SimplexOptions& options = {});

/// Any vertex of the feasible region; the objective of `polytope` is ignored.
LpResult find_vertex(const LinearProgram& polytope, const SimplexOptions& options = {});

/// Constraints of `lp` holding with equality at x.
std::vector<ActiveConstraint> active_constraints(const LinearProgram& lp,
                                                 const std::vector<Rational>& x);

/// Exact rank of a rational matrix.
std::size_t rank(std::vector<std::vector<Rational>> rows);

/// True iff the active constraints at x have full column rank.
bool is_vertex(const LinearProgram& lp, const std::vector<Rational>& x);

}  // namespace mdfa

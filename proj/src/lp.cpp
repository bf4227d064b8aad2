#include "mdfa/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace mdfa {

std::string to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

LinearProgram::LinearProgram(std::size_t n_vars)
    : n_vars_(n_vars), objective_(n_vars), bounds_(n_vars, VariableBound{Rational(0), std::nullopt}) {}

void LinearProgram::set_objective(std::vector<Rational> coeffs, Rational offset) {
    if (coeffs.size() != n_vars_) throw std::invalid_argument("objective length mismatch");
    objective_ = std::move(coeffs);
    offset_ = std::move(offset);
}

std::size_t LinearProgram::add_constraint(std::vector<Rational> coeffs, Relation relation, Rational rhs) {
    if (coeffs.size() != n_vars_) throw std::invalid_argument("constraint length mismatch");
    rows_.push_back({std::move(coeffs), relation, std::move(rhs)});
    return rows_.size() - 1;
}

void LinearProgram::set_bounds(std::size_t var, Rational low, std::optional<Rational> high) {
    if (var >= n_vars_) throw std::invalid_argument("bound on a nonexistent variable");
    if (high && *high < low) throw std::invalid_argument("variable bound with low > high");
    bounds_[var] = {std::move(low), std::move(high)};
}

namespace {

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& x) {
    Rational s;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (!a[j].is_zero() && !x[j].is_zero()) s += a[j] * x[j];
    return s;
}

}  // namespace

Rational LinearProgram::objective_value(const std::vector<Rational>& x) const {
    return dot(objective_, x) + offset_;
}

bool LinearProgram::is_feasible(const std::vector<Rational>& x) const {
    if (x.size() != n_vars_) return false;
    for (std::size_t j = 0; j < n_vars_; ++j) {
        if (x[j] < bounds_[j].low) return false;
        if (bounds_[j].high && x[j] > *bounds_[j].high) return false;
    }
    for (const auto& row : rows_) {
        const Rational lhs = dot(row.coeffs, x);
        switch (row.relation) {
            case Relation::LessEqual: if (lhs > row.rhs) return false; break;
            case Relation::GreaterEqual: if (lhs < row.rhs) return false; break;
            case Relation::Equal: if (lhs != row.rhs) return false; break;
        }
    }
    return true;
}

std::vector<ActiveConstraint> active_constraints(const LinearProgram& lp,
                                                 const std::vector<Rational>& x) {
    std::vector<ActiveConstraint> out;
    const auto& rows = lp.constraints();
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (dot(rows[r].coeffs, x) == rows[r].rhs) out.push_back({ActiveConstraint::Kind::Row, r});
    const auto& bounds = lp.bounds();
    for (std::size_t j = 0; j < lp.n_vars(); ++j) {
        if (x[j] == bounds[j].low) out.push_back({ActiveConstraint::Kind::Lower, j});
        if (bounds[j].high && x[j] == *bounds[j].high) out.push_back({ActiveConstraint::Kind::Upper, j});
    }
    return out;
}

namespace {

// Reduces `rows` to reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows.size(); ++col) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        const Rational p = rows[r][col];
        for (auto& v : rows[r]) v /= p;
        for (std::size_t q = 0; q < rows.size(); ++q) {
            if (q == r || rows[q][col].is_zero()) continue;
            const Rational f = rows[q][col];
            for (std::size_t t = col; t < cols; ++t)
                if (!rows[r][t].is_zero()) rows[q][t] -= f * rows[r][t];
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<Rational>> active_matrix(const LinearProgram& lp,
                                                 const std::vector<ActiveConstraint>& active) {
    std::vector<std::vector<Rational>> m;
    m.reserve(active.size());
    for (const auto& a : active) {
        if (a.kind == ActiveConstraint::Kind::Row) {
            m.push_back(lp.constraints()[a.index].coeffs);
        } else {
            std::vector<Rational> unit(lp.n_vars());
            unit[a.index] = 1;
            m.push_back(std::move(unit));
        }
    }
    return m;
}

// Dense simplex tableau in canonical form with respect to `basis`.
class Tableau {
public:
    Tableau(std::size_t cols) : cols_(cols), z_(cols + 1) {}

    void add_row(std::vector<Rational> row, std::size_t basic) {
        rows_.push_back(std::move(row));
        basis_.push_back(basic);
    }

    std::size_t n_rows() const { return rows_.size(); }
    std::size_t basic(std::size_t r) const { return basis_[r]; }
    const Rational& at(std::size_t r, std::size_t c) const { return rows_[r][c]; }
    const Rational& rhs(std::size_t r) const { return rows_[r][cols_]; }
    /// Current objective value of the minimization.
    Rational objective() const { return -z_[cols_]; }

    void set_costs(const std::vector<Rational>& cost) {
        for (std::size_t j = 0; j <= cols_; ++j) z_[j] = j < cols_ ? cost[j] : Rational(0);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Rational& cb = cost[basis_[r]];
            if (cb.is_zero()) continue;
            for (std::size_t j = 0; j <= cols_; ++j)
                if (!rows_[r][j].is_zero()) z_[j] -= cb * rows_[r][j];
        }
    }

    void pivot(std::size_t r, std::size_t col) {
        const Rational p = rows_[r][col];
        for (auto& v : rows_[r]) if (!v.is_zero()) v /= p;
        auto eliminate = [&](std::vector<Rational>& row) {
            if (row[col].is_zero()) return;
            const Rational f = row[col];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (!rows_[r][j].is_zero()) row[j] -= f * rows_[r][j];
        };
        for (std::size_t q = 0; q < rows_.size(); ++q) if (q != r) eliminate(rows_[q]);
        eliminate(z_);
        basis_[r] = col;
        ++pivots_;
    }

    void drop_row(std::size_t r) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    }

    enum class Outcome { Optimal, Unbounded };

    /// Bland's rule: lowest-index improving column enters; ratio ties leave by lowest basic index.
    Outcome run(std::size_t allowed_cols, std::uint64_t max_pivots) {
        for (;;) {
            std::size_t enter = allowed_cols;
            for (std::size_t j = 0; j < allowed_cols; ++j) {
                if (z_[j].sign() < 0) { enter = j; break; }
            }
            if (enter == allowed_cols) return Outcome::Optimal;
            std::size_t leave = rows_.size();
            Rational best;
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                if (rows_[r][enter].sign() <= 0) continue;
                Rational ratio = rows_[r][cols_] / rows_[r][enter];
                if (leave == rows_.size() || ratio < best ||
                    (ratio == best && basis_[r] < basis_[leave])) {
                    leave = r;
                    best = std::move(ratio);
                }
            }
            if (leave == rows_.size()) return Outcome::Unbounded;
            if (pivots_ >= max_pivots) {
                throw std::logic_error("simplex exceeded its pivot limit");
            }
            pivot(leave, enter);
        }
    }

    std::uint64_t pivots() const { return pivots_; }

private:
    std::size_t cols_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> z_;
    std::uint64_t pivots_ = 0;
};

struct StandardRow {
    std::vector<Rational> coeffs;  // structural part, in shifted variables y = x - low
    Relation relation;
    Rational rhs;
};

// Moves x along null directions of its active set until the active set has full
// column rank. With keep_objective the objective stays constant along the way.
bool complete_to_vertex(const LinearProgram& lp, std::vector<Rational>& x, bool keep_objective) {
    const std::size_t n = lp.n_vars();
    for (std::size_t guard = 0; guard <= n; ++guard) {
        if (is_vertex(lp, x)) return true;
        auto m = active_matrix(lp, active_constraints(lp, x));
        if (keep_objective) m.push_back(lp.objective());
        if (m.empty()) m.push_back(std::vector<Rational>(n));
        auto pivots = rref(m);
        if (pivots.size() == n) return false;  // only the objective row pins x
        std::vector<bool> is_pivot(n, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::size_t free_col = 0;
        while (is_pivot[free_col]) ++free_col;
        std::vector<Rational> d(n);
        d[free_col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) d[pivots[r]] = -m[r][free_col];

        auto max_step = [&](const std::vector<Rational>& dir) -> std::optional<Rational> {
            std::optional<Rational> t;
            auto limit = [&](Rational v) { if (!t || v < *t) t = std::move(v); };
            for (const auto& row : lp.constraints()) {
                const Rational ad = dot(row.coeffs, dir);
                if (ad.is_zero()) continue;
                const Rational slack = row.rhs - dot(row.coeffs, x);
                if (row.relation == Relation::LessEqual && ad.sign() > 0) limit(slack / ad);
                if (row.relation == Relation::GreaterEqual && ad.sign() < 0) limit(slack / ad);
            }
            const auto& b = lp.bounds();
            for (std::size_t j = 0; j < n; ++j) {
                if (dir[j].sign() < 0) limit((x[j] - b[j].low) / -dir[j]);
                if (dir[j].sign() > 0 && b[j].high) limit((*b[j].high - x[j]) / dir[j]);
            }
            return t;
        };
        auto step = max_step(d);
        if (!step) {
            for (auto& v : d) v = -v;
            step = max_step(d);
        }
        if (!step) return false;  // the active face contains a line
        for (std::size_t j = 0; j < n; ++j) x[j] += *step * d[j];
    }
    return is_vertex(lp, x);
}

LpResult solve_impl(const LinearProgram& lp, bool optimize, const SimplexOptions& options) {
    const std::size_t n = lp.n_vars();
    const auto& bounds = lp.bounds();

    std::vector<Rational> low(n);
    for (std::size_t j = 0; j < n; ++j) low[j] = bounds[j].low;

    std::vector<StandardRow> rows;
    for (const auto& c : lp.constraints())
        rows.push_back({c.coeffs, c.relation, c.rhs - dot(c.coeffs, low)});
    for (std::size_t j = 0; j < n; ++j) {
        if (!bounds[j].high) continue;
        std::vector<Rational> unit(n);
        unit[j] = 1;
        rows.push_back({std::move(unit), Relation::LessEqual, *bounds[j].high - bounds[j].low});
    }

    std::size_t n_slack = 0;
    for (const auto& r : rows) if (r.relation != Relation::Equal) ++n_slack;

    // Columns: [structural | slack | artificial], then rhs.
    std::vector<int> slack_sign(rows.size(), 0);
    std::vector<bool> needs_artificial(rows.size(), false);
    std::size_t n_art = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        int s = rows[r].relation == Relation::LessEqual ? 1
              : rows[r].relation == Relation::GreaterEqual ? -1 : 0;
        if (rows[r].rhs.sign() < 0) s = -s;
        slack_sign[r] = s;
        if (s != 1) { needs_artificial[r] = true; ++n_art; }
    }
    const std::size_t art_start = n + n_slack;
    const std::size_t cols = art_start + n_art;

    Tableau tab(cols);
    std::size_t slack_col = n, art_col = art_start;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::vector<Rational> row(cols + 1);
        const bool flip = rows[r].rhs.sign() < 0;
        for (std::size_t j = 0; j < n; ++j) row[j] = flip ? -rows[r].coeffs[j] : rows[r].coeffs[j];
        row[cols] = flip ? -rows[r].rhs : rows[r].rhs;
        std::size_t basic = cols;
        if (rows[r].relation != Relation::Equal) {
            row[slack_col] = slack_sign[r];
            if (slack_sign[r] == 1) basic = slack_col;
            ++slack_col;
        }
        if (needs_artificial[r]) {
            row[art_col] = 1;
            basic = art_col++;
        }
        tab.add_row(std::move(row), basic);
    }

    // Phase I: minimize the sum of artificials.
    if (n_art > 0) {
        std::vector<Rational> cost(cols);
        for (std::size_t j = art_start; j < cols; ++j) cost[j] = 1;
        tab.set_costs(cost);
        tab.run(cols, options.max_pivots);
        if (tab.objective().sign() > 0) return {LpStatus::Infeasible, {}};
        for (std::size_t r = 0; r < tab.n_rows();) {
            if (tab.basic(r) < art_start) { ++r; continue; }
            std::size_t col = 0;
            while (col < art_start && tab.at(r, col).is_zero()) ++col;
            if (col < art_start) {
                tab.pivot(r, col);
                ++r;
            } else {
                tab.drop_row(r);  // redundant equality
            }
        }
    }

    // Phase II over structural and slack columns only.
    std::vector<Rational> cost(cols);
    if (optimize)
        for (std::size_t j = 0; j < n; ++j) cost[j] = -lp.objective()[j];
    tab.set_costs(cost);
    if (tab.run(art_start, options.max_pivots) == Tableau::Outcome::Unbounded) {
        return {LpStatus::Unbounded, {}};
    }

    BasicSolution sol;
    sol.point.assign(n, Rational(0));
    for (std::size_t r = 0; r < tab.n_rows(); ++r)
        if (tab.basic(r) < n) sol.point[tab.basic(r)] = tab.rhs(r);
    for (std::size_t j = 0; j < n; ++j) sol.point[j] += bounds[j].low;
    sol.pivots = tab.pivots();

    if (!is_vertex(lp, sol.point)) complete_to_vertex(lp, sol.point, optimize);
    if (!lp.is_feasible(sol.point)) throw std::logic_error("simplex produced an infeasible point");
    sol.objective_value = lp.objective_value(sol.point);
    sol.tight_set = active_constraints(lp, sol.point);
    sol.is_vertex = is_vertex(lp, sol.point);
    return {LpStatus::Optimal, std::move(sol)};
}

}  // namespace

std::size_t rank(std::vector<std::vector<Rational>> rows) { return rref(rows).size(); }

bool is_vertex(const LinearProgram& lp, const std::vector<Rational>& x) {
    if (lp.n_vars() == 0) return true;
    return rank(active_matrix(lp, active_constraints(lp, x))) == lp.n_vars();
}

LpResult solve_to_vertex(const LinearProgram& lp, const SimplexOptions& options) {
    return solve_impl(lp, true, options);
}

LpResult find_vertex(const LinearProgram& polytope, const SimplexOptions& options) {
    return solve_impl(polytope, false, options);
}

}  // namespace mdfa

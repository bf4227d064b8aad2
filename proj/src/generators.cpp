#include "mdfa/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "mdfa/random.hpp"

namespace mdfa {

Instance table1_instance() {
    // Rows are items g1..g3, columns dimensions 1..3.
    return Instance::identical(2, 3, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}, {"g1", "g2", "g3"});
}

Instance table2_instance() {
    return Instance::identical(2, 2, {{1, 1}, {2, 0}, {0, 2}}, {"g1", "g2", "g3"});
}

bool HadamardMatrix::rows_orthogonal() const {
    if (entries.size() != order) return false;
    for (const auto& row : entries) {
        if (row.size() != order) return false;
        if (!std::all_of(row.begin(), row.end(), [](int e) { return e == 1 || e == -1; }))
            return false;
    }
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = a + 1; b < order; ++b)
            if (std::inner_product(entries[a].begin(), entries[a].end(), entries[b].begin(), 0L) != 0)
                return false;
    return true;
}

HadamardMatrix sylvester_hadamard(std::size_t order) {
    if (order == 0 || (order & (order - 1)) != 0) {
        throw std::invalid_argument("Sylvester Hadamard order must be a power of two");
    }
    HadamardMatrix h{1, {{1}}};
    while (h.order < order) {
        const std::size_t r = h.order;
        std::vector<std::vector<int>> next(2 * r, std::vector<int>(2 * r));
        for (std::size_t a = 0; a < r; ++a) {
            for (std::size_t b = 0; b < r; ++b) {
                const int e = h.entries[a][b];
                next[a][b] = e;
                next[a][b + r] = e;
                next[a + r][b] = e;
                next[a + r][b + r] = -e;
            }
        }
        h = {2 * r, std::move(next)};
    }
    return h;
}

std::size_t hadamard_order_for(std::size_t c) {
    const std::size_t need = 4 * c * c + 1;
    std::size_t r = 1;
    while (r < need) r *= 2;
    return r;
}

Instance hadamard_instance(std::size_t c) {
    const auto h = sylvester_hadamard(hadamard_order_for(c));
    std::vector<std::vector<Value>> v(h.order, std::vector<Value>(h.order));
    for (std::size_t j = 0; j < h.order; ++j)
        for (std::size_t k = 0; k < h.order; ++k) v[j][k] = (h.entries[j][k] + 1) / 2;
    return Instance::identical(2, h.order, v);
}

Instance diagonal_instance(std::size_t c) {
    const std::size_t size = 2 * c + 1;
    std::vector<std::vector<Value>> v(size, std::vector<Value>(size, 0));
    for (std::size_t j = 0; j < size; ++j) v[j][j] = 1;
    return Instance::identical(2, size, v);
}

PartitionSource PartitionSource::from_values(std::vector<Value> a) {
    const Value sum = std::accumulate(a.begin(), a.end(), Value{0});
    if (sum % 2 != 0) throw std::invalid_argument("PARTITION values must have an even sum");
    return {std::move(a), sum / 2};
}

Instance reduce_mnae3sat(const Mnae3SatSource& src) {
    if (src.clauses.empty()) throw std::invalid_argument("MNAE3SAT source needs at least one clause");
    if (src.n_vars == 0) throw std::invalid_argument("MNAE3SAT source needs at least one variable");
    std::vector<std::vector<Value>> v(src.n_vars, std::vector<Value>(src.clauses.size(), 0));
    for (std::size_t k = 0; k < src.clauses.size(); ++k) {
        const auto& clause = src.clauses[k];
        for (std::size_t var : clause) {
            if (var >= src.n_vars) {
                throw std::invalid_argument("clause " + std::to_string(k) +
                                            " names a nonexistent variable " + std::to_string(var));
            }
        }
        if (clause[0] == clause[1] || clause[0] == clause[2] || clause[1] == clause[2]) {
            throw std::invalid_argument("clause " + std::to_string(k) +
                                        " repeats a variable; clauses need three distinct variables");
        }
        for (std::size_t var : clause) v[var][k] = 1;
    }
    return Instance::identical(2, src.clauses.size(), v);
}

Instance reduce_partition(const PartitionSource& src) {
    if (src.a.empty()) throw std::invalid_argument("PARTITION source needs at least one integer");
    if (std::any_of(src.a.begin(), src.a.end(), [](Value x) { return x <= 0; })) {
        throw std::invalid_argument("PARTITION integers must be positive");
    }
    const Value sum = std::accumulate(src.a.begin(), src.a.end(), Value{0});
    if (sum != 2 * src.target) {
        throw std::invalid_argument("PARTITION sum " + std::to_string(sum) + " is not 2T = " +
                                    std::to_string(2 * src.target));
    }
    std::vector<std::vector<Value>> v;
    for (Value x : src.a) v.push_back({x, x});
    v.push_back({2 * src.target + 1, 0});
    v.push_back({0, 2 * src.target + 1});
    return Instance::identical(2, 2, v);
}

ThreeDmReduction reduce_3dm(const ThreeDmSource& src) {
    if (src.n == 0) throw std::invalid_argument("3DM source needs n >= 1");
    if (src.triplets.size() <= src.n) {
        throw std::invalid_argument("3DM reduction needs |T| > n");
    }
    std::set<std::array<std::size_t, 3>> seen;
    for (const auto& t : src.triplets) {
        if (t[0] >= src.n || t[1] >= src.n || t[2] >= src.n) {
            throw std::invalid_argument("3DM triplet element out of range");
        }
        if (!seen.insert(t).second) throw std::invalid_argument("3DM source has duplicate triplets");
    }
    const std::size_t dims = 3 * src.n;
    std::vector<std::vector<Value>> v;
    for (const auto& t : src.triplets) {
        std::vector<Value> row(dims, 0);
        row[t[0]] = 1;
        row[src.n + t[1]] = 1;
        row[2 * src.n + t[2]] = 1;
        v.push_back(std::move(row));
    }
    v.emplace_back(dims, 1);  // g*
    const std::size_t m = v.size();
    ItemSet triplet_items(m - 1);
    std::iota(triplet_items.begin(), triplet_items.end(), std::size_t{0});
    return {Instance::identical(2, dims, v), Allocation({{m - 1}, triplet_items}),
            src.triplets.size() - src.n};
}

Instance random_instance(std::uint64_t seed, std::size_t n_agents, std::size_t n_items,
                         std::size_t n_dims, Value v_max, bool identical) {
    if (v_max < 0) throw std::invalid_argument("v_max must be nonnegative");
    Xoshiro256 rng(seed);
    auto draw = [&] { return static_cast<Value>(rng.below(static_cast<std::uint64_t>(v_max) + 1)); };
    if (identical) {
        std::vector<std::vector<Value>> v(n_items, std::vector<Value>(n_dims));
        for (auto& row : v)
            for (auto& e : row) e = draw();
        return Instance::identical(n_agents, n_dims, v);
    }
    std::vector<std::vector<std::vector<Value>>> v(
        n_agents, std::vector<std::vector<Value>>(n_items, std::vector<Value>(n_dims)));
    for (auto& agent : v)
        for (auto& row : agent)
            for (auto& e : row) e = draw();
    return Instance(n_agents, n_dims, v);
}

}  // namespace mdfa

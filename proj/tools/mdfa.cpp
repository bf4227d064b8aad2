// mdfa: command line front end. ResultFile JSON goes to stdout, diagnostics to stderr.
//
// Exit codes: 0 satisfied / exists / ok, 1 violated / none exists, 2 undecided,
// 64 usage error, 65 unreadable or malformed input.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mdfa/allocators.hpp"
#include "mdfa/dp.hpp"
#include "mdfa/error.hpp"
#include "mdfa/generators.hpp"
#include "mdfa/io.hpp"
#include "mdfa/oracle.hpp"
#include "mdfa/verify.hpp"

using nlohmann::json;
using namespace mdfa;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUndecided = 2;
constexpr int kUsage = 64;
constexpr int kData = 65;

struct Globals {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::uint64_t state_cap = DpOptions{}.state_cap;
    std::uint64_t node_cap = StrongSearchOptions{}.node_budget;
    std::uint64_t family_cap = DpOptions{}.family_cap;
    std::uint64_t allocation_cap = OracleBudget{}.max_allocations;
};

struct QueryArgs {
    std::string notion = "strong";
    std::size_t c = 1;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json query_json(const std::string& command, const QueryArgs& q) {
    return {{"command", command}, {"notion", q.notion}, {"c", q.c}};
}

int emit(json result, const Stopwatch& clock, int code) {
    result["timing"] = {{"seconds", clock.seconds()}};
    std::cout << result.dump(2) << '\n';
    return code;
}

int undecided(json result, const ResourceLimitExceeded& e, const Stopwatch& clock) {
    result["answer"] = "undecided";
    result["reason"] = e.what();
    result["counters"]["used"] = e.used();
    result["counters"]["limit"] = e.limit();
    return emit(std::move(result), clock, kUndecided);
}

StrongSearchOptions search_options(const Globals& g) {
    StrongSearchOptions o;
    o.node_budget = g.node_cap;
    return o;
}

OracleBudget oracle_budget(const Globals& g) {
    OracleBudget b;
    b.max_allocations = g.allocation_cap;
    b.threads = g.threads;
    return b;
}

int cmd_verify(const Globals& g, const std::string& inst_path, const std::string& alloc_path,
               const QueryArgs& q) {
    const Stopwatch clock;
    const Instance inst = load_instance(inst_path);
    const Allocation alloc = load_allocation(alloc_path);
    alloc.validate(inst);
    json result;
    result["query"] = query_json("verify", q);
    result["allocation"] = allocation_to_json(alloc);
    if (parse_notion(q.notion) == Notion::Weak) {
        const auto v = verify_weak(inst, alloc, q.c);
        result["answer"] = v.satisfied;
        if (v.satisfied) result["witness"] = witness_to_json(v.witness);
        else result["violations"] = violations_to_json(v.violations);
        return emit(std::move(result), clock, v.satisfied ? kOk : kNo);
    }
    try {
        const auto v = verify_strong(inst, alloc, q.c, search_options(g));
        result["answer"] = v.satisfied;
        result["counters"] = {{"nodes", v.nodes}};
        if (v.satisfied) result["witness"] = witness_to_json(v.witness);
        else result["violations"] = violations_to_json(v.violations);
        return emit(std::move(result), clock, v.satisfied ? kOk : kNo);
    } catch (const ResourceLimitExceeded& e) {
        return undecided(std::move(result), e, clock);
    }
}

int cmd_exists(const Globals& g, const std::string& inst_path, const QueryArgs& q,
               const std::string& engine) {
    const Stopwatch clock;
    const Instance inst = load_instance(inst_path);
    const Notion notion = parse_notion(q.notion);
    json result;
    result["query"] = query_json("exists", q);
    result["query"]["engine"] = engine;
    try {
        bool found = false;
        std::optional<Allocation> alloc;
        if (engine == "oracle") {
            const auto r = oracle_exists(inst, {notion, q.c}, oracle_budget(g));
            found = r.exists;
            alloc = r.allocation;
            result["counters"] = {{"allocations", r.allocations_checked}};
        } else {
            DpOptions opt;
            opt.state_cap = g.state_cap;
            opt.family_cap = g.family_cap;
            opt.threads = g.threads;
            const auto r = notion == Notion::Weak ? exists_weak(inst, q.c, opt) : exists_strong(inst, q.c, opt);
            found = r.exists;
            alloc = r.allocation;
            result["counters"] = {{"states", r.states}, {"families", r.families}};
        }
        result["answer"] = found;
        if (alloc) result["allocation"] = allocation_to_json(*alloc);
        return emit(std::move(result), clock, found ? kOk : kNo);
    } catch (const ResourceLimitExceeded& e) {
        return undecided(std::move(result), e, clock);
    }
}

int cmd_oracle(const Globals& g, const std::string& inst_path, const std::string& alloc_path,
               const QueryArgs& q) {
    const Stopwatch clock;
    const Instance inst = load_instance(inst_path);
    const Notion notion = parse_notion(q.notion);
    json result;
    result["query"] = query_json("oracle", q);
    try {
        if (!alloc_path.empty()) {
            const Allocation alloc = load_allocation(alloc_path);
            alloc.validate(inst);
            const bool ok = notion == Notion::Weak ? oracle_verify_weak(inst, alloc, q.c, oracle_budget(g))
                                                   : oracle_verify_strong(inst, alloc, q.c, oracle_budget(g));
            result["answer"] = ok;
            result["allocation"] = allocation_to_json(alloc);
            return emit(std::move(result), clock, ok ? kOk : kNo);
        }
        const auto r = oracle_exists(inst, {notion, q.c}, oracle_budget(g));
        result["answer"] = r.exists;
        result["counters"] = {{"allocations", r.allocations_checked}};
        if (r.allocation) result["allocation"] = allocation_to_json(*r.allocation);
        return emit(std::move(result), clock, r.exists ? kOk : kNo);
    } catch (const ResourceLimitExceeded& e) {
        return undecided(std::move(result), e, clock);
    }
}

json sets_json(const std::vector<ItemSet>& sets) {
    json out = json::array();
    for (const auto& s : sets) out.push_back(s);
    return out;
}

int cmd_allocate(const Globals& g, const std::string& inst_path, const std::string& method,
                 bool force_preassignment) {
    const Stopwatch clock;
    const Instance inst = load_instance(inst_path);
    AllocatorResult res;
    try {
        if (method == "two-agent") res = allocate_two_agents(inst);
        else if (method == "two-agent-identical") res = allocate_two_agents_identical(inst);
        else {
            NAgentOptions opt;
            opt.force_preassignment = force_preassignment;
            res = allocate_n_agents(inst, opt);
        }
    } catch (const PreconditionError& e) {
        throw UsageError(e.what());
    }
    const std::size_t c = res.trace.guarantee_c;
    json result;
    result["query"] = {{"command", "allocate"}, {"method", method}};
    result["guarantee_c"] = c;
    result["allocation"] = allocation_to_json(res.allocation);
    result["witness"] = witness_to_json(res.witness);
    json trace{{"integral", sets_json(res.trace.integral)},
               {"fractional", sets_json(res.trace.fractional)},
               {"round_robin", res.trace.round_robin}};
    if (!res.trace.pre_assigned.empty()) {
        json z = json::array();
        for (const auto& row : res.trace.pre_assigned) z.push_back(sets_json(row));
        trace["pre_assigned"] = z;
        trace["remaining"] = res.trace.remaining;
    }
    result["trace"] = trace;

    // Self-check independently of the allocator's own witness.
    try {
        const bool ok = verify_strong(inst, res.allocation, c, search_options(g)).satisfied;
        result["answer"] = ok;
        return emit(std::move(result), clock, ok ? kOk : kNo);
    } catch (const ResourceLimitExceeded& e) {
        // The allocator's witness still certifies the guarantee; report the search as undecided.
        return undecided(std::move(result), e, clock);
    }
}

std::vector<std::size_t> parse_indices(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(part, &used);
        } catch (const std::exception&) {
            throw UsageError("not an integer list: '" + text + "'");
        }
        if (used != part.size() || v < 0) throw UsageError("not a nonnegative integer list: '" + text + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::vector<std::array<std::size_t, 3>> parse_triples(const std::string& text) {
    std::vector<std::array<std::size_t, 3>> out;
    std::stringstream ss(text);
    std::string group;
    while (std::getline(ss, group, ';')) {
        const auto v = parse_indices(group);
        if (v.size() != 3) throw UsageError("expected triples like 0,1,2;1,2,3 but got '" + group + "'");
        out.push_back({v[0], v[1], v[2]});
    }
    return out;
}

struct GenerateArgs {
    std::string kind;
    std::string out;
    std::string alloc_out;
    std::size_t c = 1;
    std::string values;
    std::size_t vars = 0;
    std::string clauses;
    std::size_t n = 0;
    std::string triplets;
    std::size_t agents = 2;
    std::size_t items = 4;
    std::size_t dims = 1;
    Value vmax = 3;
    bool identical = false;
};

int cmd_generate(const Globals& g, const GenerateArgs& a) {
    Instance inst;
    std::optional<ThreeDmReduction> red;
    try {
        if (a.kind == "table1") inst = table1_instance();
        else if (a.kind == "table2") inst = table2_instance();
        else if (a.kind == "hadamard") inst = hadamard_instance(a.c);
        else if (a.kind == "diagonal") inst = diagonal_instance(a.c);
        else if (a.kind == "reduce-mnae3sat") inst = reduce_mnae3sat({a.vars, parse_triples(a.clauses)});
        else if (a.kind == "reduce-partition") {
            std::vector<Value> vals;
            for (auto v : parse_indices(a.values)) vals.push_back(static_cast<Value>(v));
            inst = reduce_partition(PartitionSource::from_values(vals));
        } else if (a.kind == "reduce-3dm") {
            red = reduce_3dm({a.n, parse_triples(a.triplets)});
            inst = red->instance;
        } else {
            inst = random_instance(g.seed, a.agents, a.items, a.dims, a.vmax, a.identical);
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const InvalidInstance& e) {
        throw UsageError(e.what());
    }
    const json doc = instance_to_json(inst);
    if (a.out.empty()) std::cout << doc.dump(2) << '\n';
    else write_json_file(a.out, doc);
    if (red) {
        json alloc = allocation_to_json(red->allocation);
        alloc["c"] = red->c;
        if (a.alloc_out.empty()) std::cerr << "allocation: " << alloc.dump() << '\n';
        else write_json_file(a.alloc_out, alloc);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-dimensional fair allocation: verify, decide and construct sEFc allocations"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Globals g;
    app.add_option("--seed", g.seed, "Seed for random generation")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads for engines that support them")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--state-cap", g.state_cap, "Maximum DP states per layer")->capture_default_str();
    app.add_option("--node-cap", g.node_cap, "Strong verifier node budget per agent pair")
        ->capture_default_str();
    app.add_option("--family-cap", g.family_cap, "Maximum pledged-set partitions (strong DP)")
        ->capture_default_str();
    app.add_option("--allocation-cap", g.allocation_cap, "Maximum allocations the oracle enumerates")
        ->capture_default_str();

    auto add_query = [](CLI::App* sub, QueryArgs& q) {
        sub->add_option("--notion", q.notion, "weak or strong")
            ->check(CLI::IsMember({"weak", "strong"}))
            ->capture_default_str();
        sub->add_option("--c", q.c, "Number of removable goods")->capture_default_str();
    };

    std::string inst_path, alloc_path, engine = "dp", method = "two-agent";
    QueryArgs q;
    bool force = false;

    auto* verify = app.add_subcommand("verify", "Check an allocation against weak or strong sEFc");
    verify->add_option("instance", inst_path, "Instance JSON file")->required();
    verify->add_option("allocation", alloc_path, "Allocation JSON file")->required();
    add_query(verify, q);

    auto* exists = app.add_subcommand("exists", "Decide whether an sEFc allocation exists");
    exists->add_option("instance", inst_path, "Instance JSON file")->required();
    exists->add_option("--engine", engine, "dp or oracle")
        ->check(CLI::IsMember({"dp", "oracle"}))
        ->capture_default_str();
    add_query(exists, q);

    auto* oracle = app.add_subcommand("oracle", "Brute-force existence, or verification with --allocation");
    oracle->add_option("instance", inst_path, "Instance JSON file")->required();
    oracle->add_option("--allocation", alloc_path, "Allocation JSON file to verify exhaustively");
    add_query(oracle, q);

    auto* allocate = app.add_subcommand("allocate", "Construct a strong sEFc allocation");
    allocate->add_option("instance", inst_path, "Instance JSON file")->required();
    allocate->add_option("--method", method, "two-agent, two-agent-identical or n-agent")
        ->check(CLI::IsMember({"two-agent", "two-agent-identical", "n-agent"}))
        ->capture_default_str();
    allocate->add_flag("--force-preassignment", force,
                       "n-agent: use pre-assignment and the polytope even when m <= n*c");

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write an instance file");
    generate->add_option("kind", gen.kind)
        ->required()
        ->check(CLI::IsMember({"table1", "table2", "hadamard", "diagonal", "reduce-mnae3sat",
                               "reduce-partition", "reduce-3dm", "random"}));
    generate->add_option("--out", gen.out, "Output path (default: stdout)");
    generate->add_option("--c", gen.c, "hadamard / diagonal parameter")->capture_default_str();
    generate->add_option("--a", gen.values, "reduce-partition: comma-separated positive integers");
    generate->add_option("--vars", gen.vars, "reduce-mnae3sat: number of variables");
    generate->add_option("--clauses", gen.clauses, "reduce-mnae3sat: 0-based triples, e.g. 0,1,2;1,2,3");
    generate->add_option("--n", gen.n, "reduce-3dm: |X| = |Y| = |Z|");
    generate->add_option("--triplets", gen.triplets, "reduce-3dm: 0-based triples x,y,z;...");
    generate->add_option("--alloc-out", gen.alloc_out, "reduce-3dm: where to write the allocation and c");
    generate->add_option("--agents", gen.agents, "random: agents")->capture_default_str();
    generate->add_option("--items", gen.items, "random: items")->capture_default_str();
    generate->add_option("--dims", gen.dims, "random: dimensions")->capture_default_str();
    generate->add_option("--vmax", gen.vmax, "random: largest value")->capture_default_str();
    generate->add_flag("--identical", gen.identical, "random: identical agents");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*verify) return cmd_verify(g, inst_path, alloc_path, q);
        if (*exists) return cmd_exists(g, inst_path, q, engine);
        if (*oracle) return cmd_oracle(g, inst_path, alloc_path, q);
        if (*allocate) return cmd_allocate(g, inst_path, method, force);
        return cmd_generate(g, gen);
    } catch (const UsageError& e) {
        std::cerr << "mdfa: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "mdfa: " << e.what() << '\n';
        return kData;
    } catch (const InvalidAllocation& e) {
        std::cerr << "mdfa: " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "mdfa: internal error: " << e.what() << '\n';
        return 70;
    }
}

#pragma once

#include <string>

#include <json.hpp>

#include "mdfa/instance.hpp"
#include "mdfa/verify.hpp"

namespace mdfa {

/// Malformed instance or allocation file.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Instance file:
///   {"agents": n, "dimensions": l, "identical": bool?, "valuations": [...], "items": [names]?}
/// With identical = true valuations is [item][dimension]; otherwise [agent][item][dimension].
/// When "identical" is absent the array depth decides. Item indices are 0-based.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& doc);

/// {"bundles": [[item, ...], ...]}
nlohmann::json allocation_to_json(const Allocation& alloc);
Allocation allocation_from_json(const nlohmann::json& doc);

nlohmann::json witness_to_json(const WeakWitness& w);
nlohmann::json witness_to_json(const StrongWitness& w);
nlohmann::json violations_to_json(const std::vector<Violation>& v);

/// File helpers; throw ParseError on unreadable files or invalid JSON.
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);

Instance load_instance(const std::string& path);
Allocation load_allocation(const std::string& path);

}  // namespace mdfa

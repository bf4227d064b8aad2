#include "mdfa/io.hpp"

#include <fstream>
#include <sstream>

#include "mdfa/error.hpp"

namespace mdfa {

using nlohmann::json;

namespace {

std::size_t positive_count(const json& doc, const char* key) {
    if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    const json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() <= 0)
        throw ParseError(std::string("'") + key + "' must be a positive integer");
    return v.get<std::size_t>();
}

Value entry(const json& v) {
    if (!v.is_number_integer()) throw ParseError("valuation entries must be integers");
    if (v.is_number_unsigned()) {
        const auto u = v.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(INT64_MAX)) throw ParseError("valuation entry too large");
        return static_cast<Value>(u);
    }
    const auto s = v.get<std::int64_t>();
    if (s < 0) throw ParseError("valuation entries must be nonnegative");
    return s;
}

std::vector<Value> row(const json& v, std::size_t dims) {
    if (!v.is_array() || v.size() != dims)
        throw ParseError("each item needs exactly " + std::to_string(dims) + " dimension values");
    std::vector<Value> out;
    out.reserve(dims);
    for (const auto& e : v) out.push_back(entry(e));
    return out;
}

std::vector<std::vector<Value>> matrix(const json& v, std::size_t dims) {
    if (!v.is_array()) throw ParseError("valuation matrix must be an array of items");
    std::vector<std::vector<Value>> out;
    out.reserve(v.size());
    for (const auto& r : v) out.push_back(row(r, dims));
    return out;
}

json item_set(const ItemSet& s) {
    json a = json::array();
    for (auto g : s) a.push_back(g);
    return a;
}

}  // namespace

json instance_to_json(const Instance& inst) {
    json doc;
    doc["agents"] = inst.n_agents();
    doc["dimensions"] = inst.n_dims();
    doc["identical"] = inst.is_identical();
    const auto t = inst.tensor();
    if (inst.is_identical()) {
        doc["valuations"] = t.empty() ? json::array() : json(t.front());
    } else {
        doc["valuations"] = t;
    }
    if (!inst.item_names().empty()) doc["items"] = inst.item_names();
    return doc;
}

Instance instance_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("instance file must be a JSON object");
    const std::size_t n = positive_count(doc, "agents");
    const std::size_t dims = positive_count(doc, "dimensions");
    if (!doc.contains("valuations") || !doc.at("valuations").is_array())
        throw ParseError("missing array field 'valuations'");
    const json& vals = doc.at("valuations");

    bool identical;
    if (doc.contains("identical")) {
        if (!doc.at("identical").is_boolean()) throw ParseError("'identical' must be a boolean");
        identical = doc.at("identical").get<bool>();
    } else {
        // [item][dim] has numbers two levels down; [agent][item][dim] has arrays.
        identical = vals.empty() || (vals[0].is_array() && (vals[0].empty() || !vals[0][0].is_array()));
    }

    std::vector<std::string> names;
    if (doc.contains("items")) {
        const json& it = doc.at("items");
        if (!it.is_array()) throw ParseError("'items' must be an array of strings");
        for (const auto& s : it) {
            if (!s.is_string()) throw ParseError("'items' must be an array of strings");
            names.push_back(s.get<std::string>());
        }
    }

    try {
        if (identical) {
            auto mat = matrix(vals, dims);
            if (!names.empty() && names.size() != mat.size())
                throw ParseError("'items' length does not match the number of items");
            return Instance::identical(n, dims, mat, std::move(names));
        }
        if (vals.size() != n)
            throw ParseError("valuations must list " + std::to_string(n) + " agents");
        std::vector<std::vector<std::vector<Value>>> tensor;
        for (const auto& a : vals) tensor.push_back(matrix(a, dims));
        if (!names.empty() && !tensor.empty() && names.size() != tensor.front().size())
            throw ParseError("'items' length does not match the number of items");
        return Instance(n, dims, tensor, std::move(names));
    } catch (const InvalidInstance& e) {
        throw ParseError(e.what());
    }
}

json allocation_to_json(const Allocation& alloc) {
    json bundles = json::array();
    for (const auto& b : alloc.bundles()) bundles.push_back(item_set(b));
    return json{{"bundles", bundles}};
}

Allocation allocation_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("bundles") || !doc.at("bundles").is_array())
        throw ParseError("allocation file needs an array field 'bundles'");
    std::vector<ItemSet> bundles;
    for (const auto& b : doc.at("bundles")) {
        if (!b.is_array()) throw ParseError("each bundle must be an array of item indices");
        ItemSet s;
        for (const auto& g : b) {
            if (!g.is_number_unsigned()) throw ParseError("item indices must be nonnegative integers");
            s.push_back(g.get<std::size_t>());
        }
        bundles.push_back(std::move(s));
    }
    return Allocation(std::move(bundles));
}

json witness_to_json(const WeakWitness& w) {
    json out = json::array();
    for (const auto& e : w.entries)
        out.push_back({{"envier", e.envier}, {"envied", e.envied}, {"dimension", e.dim},
                       {"removed", item_set(e.removal)}});
    return out;
}

json witness_to_json(const StrongWitness& w) {
    json out = json::array();
    for (const auto& e : w.entries)
        out.push_back({{"envier", e.envier}, {"envied", e.envied}, {"removed", item_set(e.removal)}});
    return out;
}

json violations_to_json(const std::vector<Violation>& v) {
    json out = json::array();
    for (const auto& e : v) {
        json j{{"envier", e.envier}, {"envied", e.envied}};
        if (e.dim != Violation::npos) j["dimension"] = e.dim;
        out.push_back(j);
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
}

Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

Allocation load_allocation(const std::string& path) {
    return allocation_from_json(read_json_file(path));
}

}  // namespace mdfa

#pragma once

// JSON interchange: {"n": int, "edges": [[u,v],...], "blocks": [[v,...],...]}.
// The loader validates and canonicalises; this schema is the input format for
// every CLI subcommand. Transversals serialise as sorted vertex arrays.

#include "itrans/error.hpp"
#include "itrans/instance.hpp"
#include "itrans/transversal.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace itrans {

using json = nlohmann::ordered_json;

inline Instance instance_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("blocks"))
        fail_input("SchemaError", "expected object with keys n, edges, blocks");
    if (!j["n"].is_number_integer()) fail_input("SchemaError", "n must be an integer");
    int n = j["n"].get<int>();
    std::vector<std::pair<int, int>> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) fail_input("SchemaError", "edges must be an array");
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                fail_input("SchemaError", "each edge must be a pair of integers");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    if (!j["blocks"].is_array()) fail_input("SchemaError", "blocks must be an array");
    std::vector<std::vector<int>> blocks;
    for (const auto& b : j["blocks"]) {
        if (!b.is_array()) fail_input("SchemaError", "each block must be an array");
        std::vector<int> block;
        for (const auto& v : b) {
            if (!v.is_number_integer()) fail_input("SchemaError", "block entries must be integers");
            block.push_back(v.get<int>());
        }
        blocks.push_back(std::move(block));
    }
    return Instance::validate(Graph::from_edges(n, edges), std::move(blocks));
}

inline json instance_to_json(const Instance& inst) {
    json j;
    j["n"] = inst.n();
    json edges = json::array();
    for (auto [u, v] : inst.graph().edge_list()) edges.push_back(json::array({u, v}));
    j["edges"] = std::move(edges);
    json blocks = json::array();
    for (const auto& b : inst.blocks()) blocks.push_back(b);
    j["blocks"] = std::move(blocks);
    return j;
}

inline json transversal_to_json(const Transversal& t) { return json(t.vertices()); }

inline Transversal transversal_from_json(const Instance& inst, const json& j) {
    if (!j.is_array()) fail_input("SchemaError", "transversal must be an array of vertices");
    std::vector<int> vs;
    for (const auto& v : j) {
        if (!v.is_number_integer()) fail_input("SchemaError", "transversal entries must be integers");
        vs.push_back(v.get<int>());
    }
    return Transversal::checked(inst, std::move(vs));
}

inline json path_to_json(const std::vector<Transversal>& path) {
    json out = json::array();
    for (const auto& t : path) out.push_back(transversal_to_json(t));
    return out;
}

} // namespace itrans

#pragma once

// Plain undirected graph on dense vertex ids 0..n-1. Neighbour lists are kept
// sorted and deduplicated; adjacency is symmetric and irreflexive.

#include "itrans/error.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace itrans {

struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj; // sorted per vertex

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        if (n < 0) fail_input("BadVertexCount", "n must be nonnegative, got " + std::to_string(n));
        Graph g;
        g.n = n;
        g.adj.assign(static_cast<size_t>(n), {});
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                fail_input("EdgeOutOfRange",
                           "edge {" + std::to_string(u) + "," + std::to_string(v) +
                               "} outside 0.." + std::to_string(n - 1));
            if (u == v)
                fail_input("SelfLoop", "self-loop at vertex " + std::to_string(u));
            g.adj[static_cast<size_t>(u)].push_back(v);
            g.adj[static_cast<size_t>(v)].push_back(u);
        }
        for (auto& row : g.adj) {
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
        }
        return g;
    }

    bool has_edge(int u, int v) const {
        const auto& row = adj[static_cast<size_t>(u)];
        return std::binary_search(row.begin(), row.end(), v);
    }

    const std::vector<int>& neighbours(int v) const { return adj[static_cast<size_t>(v)]; }

    int degree(int v) const { return static_cast<int>(adj[static_cast<size_t>(v)].size()); }

    int max_degree() const {
        int d = 0;
        for (const auto& row : adj) d = std::max(d, static_cast<int>(row.size()));
        return d;
    }

    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n; ++u)
            for (int v : adj[static_cast<size_t>(u)])
                if (u < v) out.emplace_back(u, v);
        return out;
    }
};

} // namespace itrans

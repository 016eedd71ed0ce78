#pragma once

// Exact enumeration of IT(G) by block-by-block backtracking with adjacency
// pruning, and the reconfigurability graph built on top of it: components via
// union-find, per-component diameters and shortest paths via BFS. These are
// the desk-scale oracles behind every theorem-level check.

#include "itrans/error.hpp"
#include "itrans/instance.hpp"
#include "itrans/transversal.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace itrans {

inline constexpr long long kDefaultEnumerationCap = 10'000'000;

inline long long transversal_space_estimate(const Instance& inst) {
    long long prod = 1;
    for (const auto& b : inst.blocks()) {
        prod *= static_cast<long long>(b.size());
        if (prod < 0 || prod > (1LL << 60)) return 1LL << 60; // saturate
    }
    return prod;
}

inline std::vector<Transversal> enumerate_its(const Instance& inst,
                                              long long cap = kDefaultEnumerationCap) {
    long long estimate = transversal_space_estimate(inst);
    if (estimate > cap)
        throw error(error::category::precondition, "CapExceeded",
                    "transversal space estimate " + std::to_string(estimate) +
                        " exceeds cap " + std::to_string(cap));

    std::vector<Transversal> out;
    std::vector<int> chosen;
    chosen.reserve(static_cast<size_t>(inst.num_blocks()));
    // blocked[v] counts chosen neighbours of v; >0 prunes v.
    std::vector<int> blocked(static_cast<size_t>(inst.n()), 0);

    auto rec = [&](auto&& self, int bi) -> void {
        if (bi == inst.num_blocks()) {
            out.emplace_back(chosen);
            return;
        }
        for (int v : inst.block(bi)) {
            if (blocked[static_cast<size_t>(v)] > 0) continue;
            chosen.push_back(v);
            for (int u : inst.graph().neighbours(v)) ++blocked[static_cast<size_t>(u)];
            self(self, bi + 1);
            for (int u : inst.graph().neighbours(v)) --blocked[static_cast<size_t>(u)];
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

struct ReconfigGraph {
    std::vector<Transversal> its;       // canonical (sorted) order
    std::vector<std::vector<int>> adj;  // symmetric adjacency by index
};

inline ReconfigGraph build_reconfig_graph(const Instance& inst,
                                          long long cap = kDefaultEnumerationCap) {
    ReconfigGraph rg;
    rg.its = enumerate_its(inst, cap);
    const long long n = static_cast<long long>(rg.its.size());
    if (n * n > cap)
        throw error(error::category::precondition, "CapExceeded",
                    std::to_string(n) + " transversals: pairwise adjacency exceeds cap");
    rg.adj.assign(rg.its.size(), {});
    for (size_t i = 0; i < rg.its.size(); ++i)
        for (size_t j = i + 1; j < rg.its.size(); ++j)
            if (detail::it_adjacent_unchecked(inst, rg.its[i], rg.its[j])) {
                rg.adj[i].push_back(static_cast<int>(j));
                rg.adj[j].push_back(static_cast<int>(i));
            }
    return rg;
}

inline int rg_index_of(const ReconfigGraph& rg, const Transversal& t) {
    auto it = std::lower_bound(rg.its.begin(), rg.its.end(), t);
    if (it == rg.its.end() || !(*it == t)) return -1;
    return static_cast<int>(it - rg.its.begin());
}

// Connected components as sorted index lists, ordered by smallest member.
inline std::vector<std::vector<int>> rg_components(const ReconfigGraph& rg) {
    const int n = static_cast<int>(rg.its.size());
    std::vector<int> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (int u = 0; u < n; ++u)
        for (int v : rg.adj[static_cast<size_t>(u)])
            parent[static_cast<size_t>(find(u))] = find(v);
    std::vector<std::vector<int>> comps;
    std::vector<int> comp_of(static_cast<size_t>(n), -1);
    for (int u = 0; u < n; ++u) {
        int r = find(u);
        if (comp_of[static_cast<size_t>(r)] == -1) {
            comp_of[static_cast<size_t>(r)] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[static_cast<size_t>(comp_of[static_cast<size_t>(r)])].push_back(u);
    }
    return comps;
}

inline bool rg_connected(const ReconfigGraph& rg) { return rg_components(rg).size() <= 1; }

namespace detail {
inline std::vector<int> bfs_dist(const ReconfigGraph& rg, int src) {
    std::vector<int> dist(rg.its.size(), -1);
    std::queue<int> q;
    dist[static_cast<size_t>(src)] = 0;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : rg.adj[static_cast<size_t>(u)])
            if (dist[static_cast<size_t>(v)] == -1) {
                dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
                q.push(v);
            }
    }
    return dist;
}
} // namespace detail

// Diameter of each component (0 for singletons), in rg_components order.
inline std::vector<int> rg_diameters(const ReconfigGraph& rg) {
    std::vector<int> out;
    for (const auto& comp : rg_components(rg)) {
        int diam = 0;
        for (int u : comp) {
            auto dist = detail::bfs_dist(rg, u);
            for (int v : comp) diam = std::max(diam, dist[static_cast<size_t>(v)]);
        }
        out.push_back(diam);
    }
    return out;
}

// Shortest path between two transversal indices, if connected.
inline std::optional<std::vector<int>> rg_path(const ReconfigGraph& rg, int from, int to) {
    std::vector<int> prev(rg.its.size(), -2);
    std::queue<int> q;
    prev[static_cast<size_t>(from)] = -1;
    q.push(from);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        if (u == to) break;
        for (int v : rg.adj[static_cast<size_t>(u)])
            if (prev[static_cast<size_t>(v)] == -2) {
                prev[static_cast<size_t>(v)] = u;
                q.push(v);
            }
    }
    if (prev[static_cast<size_t>(to)] == -2) return std::nullopt;
    std::vector<int> path;
    for (int u = to; u != -1; u = prev[static_cast<size_t>(u)]) path.push_back(u);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace itrans

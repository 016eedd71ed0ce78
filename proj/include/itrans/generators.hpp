#pragma once

// Test-corpus generators: disjoint K_{delta,delta} unions with seeded block
// placements, the extremal pairs with a planted block permutation, and
// degree-guarded random instances. All deterministic given their seeds.

#include "itrans/error.hpp"
#include "itrans/instance.hpp"
#include "itrans/markov.hpp" // uniform_below
#include "itrans/transversal.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace itrans {

// m disjoint copies of K_{delta,delta} on 2*delta*m vertices; blocks of size
// exactly 2*delta. placement_seed 0 keeps one block per copy, 1 uses the
// matched-sides pattern with a cyclic shift, anything else shuffles vertices
// into blocks at random.
inline Instance gen_disjoint_kdd(int delta, int m, std::uint64_t placement_seed) {
    if (delta < 1 || m < 1) fail_input("InfeasibleParameters", "need delta >= 1 and m >= 1");
    const int n = 2 * delta * m;
    std::vector<std::pair<int, int>> edges;
    // copy c occupies [2*delta*c, 2*delta*(c+1)): first delta = side R, rest = side B
    auto r_vertex = [&](int copy, int i) { return 2 * delta * copy + i; };
    auto b_vertex = [&](int copy, int i) { return 2 * delta * copy + delta + i; };
    for (int c = 0; c < m; ++c)
        for (int i = 0; i < delta; ++i)
            for (int j = 0; j < delta; ++j) edges.emplace_back(r_vertex(c, i), b_vertex(c, j));

    std::vector<std::vector<int>> blocks(static_cast<size_t>(m));
    if (placement_seed == 0) {
        for (int c = 0; c < m; ++c)
            for (int k = 0; k < 2 * delta; ++k)
                blocks[static_cast<size_t>(c)].push_back(2 * delta * c + k);
    } else if (placement_seed == 1) {
        // block u = R-side of copy u plus B-side of copy (u+1) mod m
        for (int u = 0; u < m; ++u) {
            for (int i = 0; i < delta; ++i) blocks[static_cast<size_t>(u)].push_back(r_vertex(u, i));
            for (int i = 0; i < delta; ++i)
                blocks[static_cast<size_t>(u)].push_back(b_vertex((u + 1) % m, i));
        }
    } else {
        std::mt19937_64 rng(placement_seed);
        std::vector<int> order(static_cast<size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        for (size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[uniform_below(rng, i)]);
        for (int k = 0; k < n; ++k)
            blocks[static_cast<size_t>(k / (2 * delta))].push_back(order[static_cast<size_t>(k)]);
    }
    return Instance::validate(Graph::from_edges(n, edges), std::move(blocks));
}

struct ExtremalPair {
    Instance instance;
    Transversal s, t;
    std::vector<int> sigma; // planted block permutation
};

// The extremal structure: block u holds side R_u of copy u and side B of copy
// sigma^{-1}... concretely, edges join R of block u to the B-vertices stored
// in block sigma[u]; S picks the first R-vertex per block and T its matched
// partner. The pair cannot be reconfigured to agree anywhere (oracle-checked
// in the tests).
inline ExtremalPair gen_extremal_pair(int delta, int m, const std::vector<int>& sigma) {
    if (delta < 1 || m < 1) fail_input("InfeasibleParameters", "need delta >= 1 and m >= 1");
    if (static_cast<int>(sigma.size()) != m)
        fail_input("InfeasibleParameters", "sigma must have one entry per block");
    {
        std::vector<char> seen(static_cast<size_t>(m), 0);
        for (int img : sigma) {
            if (img < 0 || img >= m || seen[static_cast<size_t>(img)])
                fail_input("InfeasibleParameters", "sigma is not a permutation");
            seen[static_cast<size_t>(img)] = 1;
        }
    }
    const int n = 2 * delta * m;
    // block u occupies [2*delta*u, ...): first delta vertices R_u, rest B_u
    auto r_vertex = [&](int u, int i) { return 2 * delta * u + i; };
    auto b_vertex = [&](int u, int i) { return 2 * delta * u + delta + i; };
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < m; ++u)
        for (int i = 0; i < delta; ++i)
            for (int j = 0; j < delta; ++j)
                edges.emplace_back(r_vertex(u, i), b_vertex(sigma[static_cast<size_t>(u)], j));
    std::vector<std::vector<int>> blocks(static_cast<size_t>(m));
    for (int u = 0; u < m; ++u)
        for (int k = 0; k < 2 * delta; ++k) blocks[static_cast<size_t>(u)].push_back(2 * delta * u + k);

    ExtremalPair out;
    out.instance = Instance::validate(Graph::from_edges(n, edges), std::move(blocks));
    out.sigma = sigma;
    std::vector<int> s_vs, t_vs;
    for (int u = 0; u < m; ++u) {
        s_vs.push_back(r_vertex(u, 0));
        t_vs.push_back(b_vertex(sigma[static_cast<size_t>(u)], 0)); // matched partner of S_u
    }
    out.s = Transversal(std::move(s_vs));
    out.t = Transversal(std::move(t_vs));
    ITRANS_CHECK(is_full_it(out.instance, out.s) && is_full_it(out.instance, out.t),
                 "extremal pair construction must yield ITs");
    return out;
}

// Degree-guarded uniform edge insertion (not uniform over all max-degree
// graphs; the bias is acceptable for a test corpus). Blocks have exactly the
// requested size. The actual max degree may come out below the request.
inline Instance gen_random_instance(int delta, int num_blocks, int thickness,
                                    std::uint64_t seed) {
    if (delta < 0 || num_blocks < 1 || thickness < 1)
        fail_input("InfeasibleParameters", "need delta >= 0, blocks >= 1, thickness >= 1");
    const int n = num_blocks * thickness;
    if (delta > n - 1)
        fail_input("InfeasibleParameters", "delta exceeds n - 1");

    std::mt19937_64 rng(seed);
    std::vector<int> degree(static_cast<size_t>(n), 0);
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<char>> present(static_cast<size_t>(n),
                                           std::vector<char>(static_cast<size_t>(n), 0));
    if (delta > 0) {
        const int attempts = 4 * delta * n;
        for (int a = 0; a < attempts; ++a) {
            int u = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
            int v = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
            if (u == v || present[static_cast<size_t>(u)][static_cast<size_t>(v)]) continue;
            if (degree[static_cast<size_t>(u)] >= delta || degree[static_cast<size_t>(v)] >= delta)
                continue;
            present[static_cast<size_t>(u)][static_cast<size_t>(v)] = 1;
            present[static_cast<size_t>(v)][static_cast<size_t>(u)] = 1;
            ++degree[static_cast<size_t>(u)];
            ++degree[static_cast<size_t>(v)];
            edges.emplace_back(u, v);
        }
    }
    std::vector<std::vector<int>> blocks(static_cast<size_t>(num_blocks));
    for (int v = 0; v < n; ++v) blocks[static_cast<size_t>(v / thickness)].push_back(v);
    return Instance::validate(Graph::from_edges(n, edges), std::move(blocks));
}

} // namespace itrans

#pragma once

// Small handmade instances and fixture generators shared across the tests.

#include "itrans/generators.hpp"
#include "itrans/instance.hpp"
#include "itrans/markov.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace fixtures {

using itrans::Graph;
using itrans::Instance;

// one block {0,1}, edge 0-1
inline Instance single_edge() {
    return Instance::validate(Graph::from_edges(2, {{0, 1}}), {{0, 1}});
}

// blocks {0,1},{2,3}, edge 1-2
inline Instance edge12() {
    return Instance::validate(Graph::from_edges(4, {{1, 2}}), {{0, 1}, {2, 3}});
}

// two disjoint edges 0-1, 2-3 with blocks {0,1},{2,3}
inline Instance two_disjoint_edges() {
    return Instance::validate(Graph::from_edges(4, {{0, 1}, {2, 3}}), {{0, 1}, {2, 3}});
}

// K_{2,2} with sides {0,1},{2,3} and one block of 4
inline Instance k22_one_block() {
    return Instance::validate(Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}),
                              {{0, 1, 2, 3}});
}

// K_{2,2} on {0,1}x{2,3} plus two free vertices per block:
// blocks {0,1,4,5}, {2,3,6,7}; delta 2, thickness 4
inline Instance k22_padded() {
    return Instance::validate(Graph::from_edges(8, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}),
                              {{0, 1, 4, 5}, {2, 3, 6, 7}});
}

// edgeless instance with the given block sizes
inline Instance edgeless(std::vector<int> sizes) {
    int n = 0;
    std::vector<std::vector<int>> blocks;
    for (int s : sizes) {
        std::vector<int> b;
        for (int i = 0; i < s; ++i) b.push_back(n + i);
        n += s;
        blocks.push_back(std::move(b));
    }
    return Instance::validate(Graph::from_edges(n, {}), std::move(blocks));
}

// A random instance owning a K_{delta,delta} component whose side A fills the
// first half of a dedicated donor block; the B side is split between the
// donor block and random existing blocks.
struct SwapFixture {
    Instance instance;
    std::vector<int> component;
    int donor_block;
};

inline SwapFixture make_swap_fixture(int delta, std::uint64_t seed) {
    using itrans::gen_random_instance;
    using itrans::uniform_below;
    std::mt19937_64 rng(seed * 1315423911ULL + 7);
    Instance base = gen_random_instance(delta, 2, 2 * delta, seed);
    const int nb = base.n();
    const int b_in_u = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(delta) + 1));
    std::vector<int> a_vs, b_vs, spares;
    int next = nb;
    for (int i = 0; i < delta; ++i) a_vs.push_back(next++);
    for (int i = 0; i < delta; ++i) b_vs.push_back(next++);
    for (int i = 0; i < delta - b_in_u; ++i) spares.push_back(next++);

    auto edges = base.graph().edge_list();
    for (int a : a_vs)
        for (int b : b_vs) edges.emplace_back(a, b);

    std::vector<std::vector<int>> blocks = base.blocks();
    std::vector<int> u_block = a_vs;
    for (int i = 0; i < b_in_u; ++i) u_block.push_back(b_vs[static_cast<size_t>(i)]);
    u_block.insert(u_block.end(), spares.begin(), spares.end());
    for (int i = b_in_u; i < delta; ++i)
        blocks[uniform_below(rng, blocks.size())].push_back(b_vs[static_cast<size_t>(i)]);
    blocks.push_back(u_block);

    SwapFixture fx;
    fx.instance = Instance::validate(Graph::from_edges(next, edges), std::move(blocks));
    fx.component = a_vs;
    fx.component.insert(fx.component.end(), b_vs.begin(), b_vs.end());
    fx.donor_block = fx.instance.block_of(a_vs.front());
    return fx;
}

} // namespace fixtures

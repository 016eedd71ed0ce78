#pragma once

// An instance is a graph together with an ordered partition of its vertices
// into blocks. Blocks are canonicalised (sorted internally, ordered by their
// first vertex) so that traces and serialised outputs are reproducible.
// Instances are immutable after construction.

#include "itrans/error.hpp"
#include "itrans/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace itrans {

class Instance {
public:
    Instance() = default;

    // validate_instance: rejects malformed partitions, caches delta/thickness.
    static Instance validate(Graph graph, std::vector<std::vector<int>> blocks) {
        Instance inst;
        inst.graph_ = std::move(graph);
        const int n = inst.graph_.n;

        for (auto& block : blocks) std::sort(block.begin(), block.end());
        std::sort(blocks.begin(), blocks.end(),
                  [](const std::vector<int>& a, const std::vector<int>& b) {
                      if (a.empty() || b.empty()) return a.size() > b.size();
                      return a.front() < b.front();
                  });

        std::vector<int> owner(static_cast<size_t>(n), -1);
        for (size_t bi = 0; bi < blocks.size(); ++bi) {
            const auto& block = blocks[bi];
            if (block.empty())
                fail_input("EmptyBlock", "block " + std::to_string(bi) + " is empty");
            for (size_t j = 0; j < block.size(); ++j) {
                int v = block[j];
                if (v < 0 || v >= n)
                    fail_input("UncoveredVertex",
                               "block " + std::to_string(bi) + " names vertex " +
                                   std::to_string(v) + " outside 0.." + std::to_string(n - 1));
                if (j > 0 && block[j] == block[j - 1])
                    fail_input("OverlappingBlocks",
                               "vertex " + std::to_string(v) + " listed twice in block " +
                                   std::to_string(bi));
                if (owner[static_cast<size_t>(v)] != -1)
                    fail_input("OverlappingBlocks",
                               "vertex " + std::to_string(v) + " appears in blocks " +
                                   std::to_string(owner[static_cast<size_t>(v)]) + " and " +
                                   std::to_string(bi));
                owner[static_cast<size_t>(v)] = static_cast<int>(bi);
            }
        }
        for (int v = 0; v < n; ++v)
            if (owner[static_cast<size_t>(v)] == -1)
                fail_input("UncoveredVertex",
                           "vertex " + std::to_string(v) + " is not covered by any block");

        inst.blocks_ = std::move(blocks);
        inst.block_of_ = std::move(owner);
        inst.delta_ = inst.graph_.max_degree();
        inst.thickness_ = inst.blocks_.empty()
                              ? 0
                              : static_cast<int>(std::min_element(inst.blocks_.begin(), inst.blocks_.end(),
                                                                  [](const auto& a, const auto& b) {
                                                                      return a.size() < b.size();
                                                                  })
                                                     ->size());
        return inst;
    }

    const Graph& graph() const { return graph_; }
    int n() const { return graph_.n; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    const std::vector<int>& block(int i) const { return blocks_[static_cast<size_t>(i)]; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    int block_of(int v) const { return block_of_[static_cast<size_t>(v)]; }
    int delta() const { return delta_; }
    int thickness() const { return thickness_; }

    // Haxell machinery scope: t-thick with t >= 2*delta.
    bool haxell_thick() const { return thickness_ >= 2 * delta_; }

private:
    Graph graph_;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_of_;
    int delta_ = 0;
    int thickness_ = 0;
};

// Sub-instance induced by a set of blocks (V_R, G[V_R], the blocks of R),
// with vertex maps back to the parent.
struct InducedInstance {
    Instance instance;
    std::vector<int> to_parent;   // child vertex -> parent vertex
    std::vector<int> from_parent; // parent vertex -> child vertex or -1
    std::vector<int> block_indices; // parent block indices, ascending
};

inline InducedInstance induced_on_blocks(const Instance& inst, std::vector<int> block_indices) {
    std::sort(block_indices.begin(), block_indices.end());
    block_indices.erase(std::unique(block_indices.begin(), block_indices.end()),
                        block_indices.end());
    InducedInstance out;
    out.block_indices = block_indices;
    out.from_parent.assign(static_cast<size_t>(inst.n()), -1);
    for (int bi : block_indices) {
        for (int v : inst.block(bi)) {
            out.from_parent[static_cast<size_t>(v)] = static_cast<int>(out.to_parent.size());
            out.to_parent.push_back(v);
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (size_t ci = 0; ci < out.to_parent.size(); ++ci) {
        int pu = out.to_parent[ci];
        for (int pv : inst.graph().neighbours(pu)) {
            int cv = out.from_parent[static_cast<size_t>(pv)];
            if (cv > static_cast<int>(ci)) edges.emplace_back(static_cast<int>(ci), cv);
        }
    }
    std::vector<std::vector<int>> child_blocks;
    for (int bi : block_indices) {
        std::vector<int> b;
        for (int v : inst.block(bi)) b.push_back(out.from_parent[static_cast<size_t>(v)]);
        child_blocks.push_back(std::move(b));
    }
    out.instance = Instance::validate(Graph::from_edges(static_cast<int>(out.to_parent.size()), edges),
                                      std::move(child_blocks));
    return out;
}

// Irreducible components: blocks are linked whenever some edge joins their
// vertex sets; each connected class of that block-contact relation induces a
// component. A single returned element means the instance is irreducible.
inline std::vector<InducedInstance> irreducible_components(const Instance& inst) {
    const int nb = inst.num_blocks();
    std::vector<int> parent(static_cast<size_t>(nb));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); };
    for (auto [u, v] : inst.graph().edge_list())
        if (inst.block_of(u) != inst.block_of(v)) unite(inst.block_of(u), inst.block_of(v));

    std::vector<std::vector<int>> classes;
    std::vector<int> class_of(static_cast<size_t>(nb), -1);
    for (int b = 0; b < nb; ++b) {
        int r = find(b);
        if (class_of[static_cast<size_t>(r)] == -1) {
            class_of[static_cast<size_t>(r)] = static_cast<int>(classes.size());
            classes.emplace_back();
        }
        classes[static_cast<size_t>(class_of[static_cast<size_t>(r)])].push_back(b);
    }
    std::vector<InducedInstance> out;
    out.reserve(classes.size());
    for (auto& cls : classes) out.push_back(induced_on_blocks(inst, cls));
    return out;
}

inline bool is_irreducible(const Instance& inst) {
    return irreducible_components(inst).size() == 1;
}

// Disjoint union: b's vertices are relabelled after a's, block lists concatenate.
inline Instance union_instances(const Instance& a, const Instance& b) {
    const int offset = a.n();
    auto edges = a.graph().edge_list();
    for (auto [u, v] : b.graph().edge_list()) edges.emplace_back(u + offset, v + offset);
    std::vector<std::vector<int>> blocks = a.blocks();
    for (const auto& block : b.blocks()) {
        std::vector<int> shifted;
        shifted.reserve(block.size());
        for (int v : block) shifted.push_back(v + offset);
        blocks.push_back(std::move(shifted));
    }
    return Instance::validate(Graph::from_edges(a.n() + b.n(), edges), std::move(blocks));
}

// True iff G is isomorphic to exactly |blocks| disjoint copies of the complete
// bipartite graph K_{delta,delta}. Block placement is deliberately ignored.
inline bool is_disjoint_kdd_union(const Instance& inst) {
    const int delta = inst.delta();
    if (delta == 0) return false;
    if (inst.n() != 2 * delta * inst.num_blocks()) return false;

    std::vector<int> colour(static_cast<size_t>(inst.n()), -1);
    int components = 0;
    std::vector<int> stack, comp;
    for (int s = 0; s < inst.n(); ++s) {
        if (colour[static_cast<size_t>(s)] != -1) continue;
        ++components;
        comp.clear();
        colour[static_cast<size_t>(s)] = 0;
        stack.assign(1, s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int v : inst.graph().neighbours(u)) {
                if (colour[static_cast<size_t>(v)] == -1) {
                    colour[static_cast<size_t>(v)] = 1 - colour[static_cast<size_t>(u)];
                    stack.push_back(v);
                } else if (colour[static_cast<size_t>(v)] == colour[static_cast<size_t>(u)]) {
                    return false; // odd cycle: not bipartite
                }
            }
        }
        int side0 = 0;
        for (int u : comp) {
            if (colour[static_cast<size_t>(u)] == 0) ++side0;
            if (inst.graph().degree(u) != delta) return false;
        }
        // Sides of size delta with every degree delta force completeness.
        if (static_cast<int>(comp.size()) != 2 * delta || side0 != delta) return false;
    }
    return components == inst.num_blocks();
}

} // namespace itrans

#pragma once

// The swap transformation: given a component K ~ K_{delta,delta} with side A
// inside a block U, remove K and redistribute U's spare vertices Y(W) to the
// blocks W that used to hold B-vertices, producing an instance G' with one
// fewer block. M maps each transversal of G' to a set of pairwise
// reconfigurable transversals of G; lift_path transports reconfiguration
// paths of G' back to G edge by edge.

#include "itrans/error.hpp"
#include "itrans/instance.hpp"
#include "itrans/transversal.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace itrans {

struct SwapContext {
    Instance parent;
    int donor_block = -1;              // U
    std::vector<int> side_a, side_b;   // K's sides, A inside U
    std::vector<int> target_blocks;    // parent blocks meeting B, minus U (ascending)
    std::vector<int> remainder_blocks; // the other parent blocks, minus U
    std::vector<std::vector<int>> y_of; // Y(W) per target block, aligned with target_blocks

    Instance child;
    std::vector<int> child_to_parent_vertex;
    std::vector<int> parent_to_child_vertex; // -1 on K
    std::vector<int> parent_to_child_block;  // -1 on U
    std::vector<int> child_to_parent_block;

    // Target block owning a spare vertex of U, or -1.
    int y_owner(int parent_vertex) const {
        for (size_t i = 0; i < target_blocks.size(); ++i)
            if (std::binary_search(y_of[i].begin(), y_of[i].end(), parent_vertex))
                return target_blocks[i];
        return -1;
    }

    std::vector<int> b_in_block(int parent_block) const {
        std::vector<int> out;
        for (int b : side_b)
            if (parent.block_of(b) == parent_block) out.push_back(b);
        return out;
    }
};

namespace detail {

inline std::vector<int> component_of(const Graph& g, int start) {
    std::vector<char> seen(static_cast<size_t>(g.n), 0);
    std::vector<int> stack{start}, comp;
    seen[static_cast<size_t>(start)] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        comp.push_back(u);
        for (int v : g.neighbours(u))
            if (!seen[static_cast<size_t>(v)]) {
                seen[static_cast<size_t>(v)] = 1;
                stack.push_back(v);
            }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

} // namespace detail

inline SwapContext swap_instance(const Instance& inst, std::vector<int> component, int donor_block) {
    std::sort(component.begin(), component.end());
    component.erase(std::unique(component.begin(), component.end()), component.end());
    if (component.empty())
        throw error(error::category::precondition, "NotAComponent", "empty component");

    const int delta = inst.delta();
    if (delta < 1) fail_precondition("swap requires delta >= 1");

    if (detail::component_of(inst.graph(), component.front()) != component)
        throw error(error::category::precondition, "NotAComponent",
                    "vertex set is not a connected component");
    if (static_cast<int>(component.size()) != 2 * delta)
        throw error(error::category::precondition, "NotAComponent",
                    "component has " + std::to_string(component.size()) +
                        " vertices, expected 2*delta = " + std::to_string(2 * delta));

    // Bipartition; completeness follows from every degree being delta.
    std::vector<int> side0{component.front()}, side1;
    for (int v : component) {
        if (v == component.front()) continue;
        if (inst.graph().has_edge(component.front(), v))
            side1.push_back(v);
        else
            side0.push_back(v);
    }
    for (int v : component)
        if (inst.graph().degree(v) != delta)
            throw error(error::category::precondition, "NotAComponent",
                        "vertex " + std::to_string(v) + " has degree != delta");
    if (static_cast<int>(side0.size()) != delta || static_cast<int>(side1.size()) != delta)
        throw error(error::category::precondition, "NotAComponent",
                    "component is not K_{delta,delta}");
    for (int u : side0)
        for (int v : side0)
            if (u < v && inst.graph().has_edge(u, v))
                throw error(error::category::precondition, "NotAComponent",
                            "side of K is not independent");

    auto inside = [&](const std::vector<int>& side) {
        for (int v : side)
            if (inst.block_of(v) != donor_block) return false;
        return true;
    };
    SwapContext ctx;
    ctx.parent = inst;
    ctx.donor_block = donor_block;
    if (inside(side0)) {
        ctx.side_a = side0;
        ctx.side_b = side1;
    } else if (inside(side1)) {
        ctx.side_a = side1;
        ctx.side_b = side0;
    } else {
        throw error(error::category::precondition, "SideNotInBlock",
                    "neither side of K lies inside block " + std::to_string(donor_block));
    }

    for (int b : ctx.side_b)
        if (inst.block_of(b) != donor_block && std::find(ctx.target_blocks.begin(),
                                                         ctx.target_blocks.end(),
                                                         inst.block_of(b)) == ctx.target_blocks.end())
            ctx.target_blocks.push_back(inst.block_of(b));
    std::sort(ctx.target_blocks.begin(), ctx.target_blocks.end());
    for (int b = 0; b < inst.num_blocks(); ++b)
        if (b != donor_block &&
            !std::binary_search(ctx.target_blocks.begin(), ctx.target_blocks.end(), b))
            ctx.remainder_blocks.push_back(b);

    std::vector<int> spares; // U \ (A u B), ascending
    for (int v : inst.block(donor_block))
        if (!std::binary_search(component.begin(), component.end(), v)) spares.push_back(v);

    size_t needed = 0;
    for (int w : ctx.target_blocks) needed += ctx.b_in_block(w).size();
    ITRANS_CHECK(needed <= spares.size(), "swap counting inequality violated");
    if (ctx.target_blocks.empty() && !spares.empty())
        fail_precondition("degenerate swap: B inside U but U has spare vertices, "
                          "so removing U would leave them unblocked");

    // Greedy Y assignment: ascending target blocks take the lowest spares;
    // the last target block absorbs the leftover.
    size_t cursor = 0;
    for (size_t i = 0; i < ctx.target_blocks.size(); ++i) {
        size_t take = ctx.b_in_block(ctx.target_blocks[i]).size();
        if (i + 1 == ctx.target_blocks.size()) take = spares.size() - cursor;
        ctx.y_of.emplace_back(spares.begin() + static_cast<long>(cursor),
                              spares.begin() + static_cast<long>(cursor + take));
        cursor += take;
    }

    // Build G' = (G - K, B' u R).
    ctx.parent_to_child_vertex.assign(static_cast<size_t>(inst.n()), -1);
    for (int v = 0; v < inst.n(); ++v)
        if (!std::binary_search(component.begin(), component.end(), v)) {
            ctx.parent_to_child_vertex[static_cast<size_t>(v)] =
                static_cast<int>(ctx.child_to_parent_vertex.size());
            ctx.child_to_parent_vertex.push_back(v);
        }
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : inst.graph().edge_list()) {
        int cu = ctx.parent_to_child_vertex[static_cast<size_t>(u)];
        int cv = ctx.parent_to_child_vertex[static_cast<size_t>(v)];
        if (cu != -1 && cv != -1) edges.emplace_back(cu, cv);
    }
    std::vector<std::vector<int>> child_blocks;
    for (int b = 0; b < inst.num_blocks(); ++b) {
        if (b == donor_block) continue;
        std::vector<int> parent_members;
        auto ti = std::find(ctx.target_blocks.begin(), ctx.target_blocks.end(), b);
        if (ti == ctx.target_blocks.end()) {
            parent_members = inst.block(b);
        } else {
            for (int v : inst.block(b))
                if (!std::binary_search(ctx.side_b.begin(), ctx.side_b.end(), v))
                    parent_members.push_back(v);
            const auto& y = ctx.y_of[static_cast<size_t>(ti - ctx.target_blocks.begin())];
            parent_members.insert(parent_members.end(), y.begin(), y.end());
        }
        std::vector<int> members;
        for (int v : parent_members)
            members.push_back(ctx.parent_to_child_vertex[static_cast<size_t>(v)]);
        child_blocks.push_back(std::move(members));
    }
    ctx.child = Instance::validate(
        Graph::from_edges(static_cast<int>(ctx.child_to_parent_vertex.size()), edges),
        std::move(child_blocks));
    ITRANS_CHECK(ctx.child.num_blocks() == inst.num_blocks() - 1,
                 "swap must drop exactly one block");
    ITRANS_CHECK(ctx.child.thickness() >= 2 * delta,
                 "swapped instance lost 2*delta-thickness");

    // Block maps survive the child's canonical reordering: identify each child
    // block by a member that kept its parent block (W \ B is never empty).
    ctx.parent_to_child_block.assign(static_cast<size_t>(inst.num_blocks()), -1);
    ctx.child_to_parent_block.assign(static_cast<size_t>(ctx.child.num_blocks()), -1);
    for (int b = 0; b < inst.num_blocks(); ++b) {
        if (b == donor_block) continue;
        for (int v : inst.block(b)) {
            if (std::binary_search(ctx.side_b.begin(), ctx.side_b.end(), v)) continue;
            int cb = ctx.child.block_of(ctx.parent_to_child_vertex[static_cast<size_t>(v)]);
            ctx.parent_to_child_block[static_cast<size_t>(b)] = cb;
            ctx.child_to_parent_block[static_cast<size_t>(cb)] = b;
            break;
        }
    }
    return ctx;
}

namespace detail {

// Parent-coordinate image of a child transversal.
inline std::vector<int> parent_vertices_of(const SwapContext& ctx, const Transversal& child_it) {
    std::vector<int> out;
    for (int cv : child_it.vertices())
        out.push_back(ctx.child_to_parent_vertex[static_cast<size_t>(cv)]);
    std::sort(out.begin(), out.end());
    return out;
}

// Target blocks whose slot in S is filled from Y(W) (the set Y'_S), ascending.
inline std::vector<int> y_blocks_of(const SwapContext& ctx, const Transversal& child_it) {
    std::vector<int> out;
    for (int pv : parent_vertices_of(ctx, child_it))
        if (ctx.parent.block_of(pv) == ctx.donor_block) out.push_back(ctx.y_owner(pv));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

// The map M: IT(G') -> P(IT(G)).
inline std::vector<Transversal> lift_transversal(const SwapContext& ctx,
                                                 const Transversal& child_it,
                                                 bool check_pairwise = true);

// Path inside M(S) from one member to another (members are pairwise
// reconfigurable). Front of the result is `from`, back is `to`.
inline std::vector<Transversal> reach_within_m(const SwapContext& ctx, const Transversal& child_it,
                                               const Transversal& from, const Transversal& to) {
    std::vector<Transversal> path{from};
    if (from == to) return path;
    const auto y_blocks = detail::y_blocks_of(ctx, child_it);
    auto current = [&]() -> const Transversal& { return path.back(); };

    if (y_blocks.empty()) {
        // members differ only in the A-vertex
        int a = to.vertex_in_block(ctx.parent, ctx.donor_block);
        path.push_back(oplus(ctx.parent, current(), a));
    } else {
        int y_from = current().vertex_in_block(ctx.parent, ctx.donor_block);
        int y_to = to.vertex_in_block(ctx.parent, ctx.donor_block);
        if (y_from != y_to) path.push_back(oplus(ctx.parent, current(), y_to));
        for (int w : y_blocks) {
            int b_to = to.vertex_in_block(ctx.parent, w);
            if (current().vertex_in_block(ctx.parent, w) != b_to)
                path.push_back(oplus(ctx.parent, current(), b_to));
        }
    }
    for (size_t i = 1; i < path.size(); ++i)
        ITRANS_CHECK(detail::it_adjacent_unchecked(ctx.parent, path[i - 1], path[i]),
                     "intra-M move is not a reconfiguration edge");
    ITRANS_CHECK(current() == to, "intra-M walk missed its target");
    return path;
}

inline std::vector<Transversal> lift_transversal(const SwapContext& ctx,
                                                 const Transversal& child_it,
                                                 bool check_pairwise) {
    if (!is_full_it(ctx.child, child_it))
        throw error(error::category::precondition, "NotAnIT", to_string(child_it));

    const std::vector<int> parent_vs = detail::parent_vertices_of(ctx, child_it);
    const std::vector<int> y_blocks = detail::y_blocks_of(ctx, child_it);

    std::vector<Transversal> out;
    if (y_blocks.empty()) {
        for (int a : ctx.side_a) {
            auto vs = parent_vs;
            vs.push_back(a);
            out.emplace_back(std::move(vs));
        }
    } else {
        // keep = S restricted to V' u R (drop the Y-slot vertices)
        std::vector<int> keep, ys;
        for (int pv : parent_vs)
            (ctx.parent.block_of(pv) == ctx.donor_block ? ys : keep).push_back(pv);
        std::vector<std::vector<int>> choices; // B n W per Y-block
        for (int w : y_blocks) choices.push_back(ctx.b_in_block(w));
        std::vector<size_t> idx(choices.size(), 0);
        while (true) {
            for (int y : ys) {
                auto vs = keep;
                vs.push_back(y);
                for (size_t i = 0; i < choices.size(); ++i) vs.push_back(choices[i][idx[i]]);
                out.emplace_back(std::move(vs));
            }
            size_t i = 0;
            while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    }
    std::sort(out.begin(), out.end());

    for (const auto& t : out)
        ITRANS_CHECK(is_full_it(ctx.parent, t), "M produced a non-IT " + to_string(t));
    if (check_pairwise)
        for (size_t i = 0; i < out.size(); ++i)
            for (size_t j = i + 1; j < out.size(); ++j)
                reach_within_m(ctx, child_it, out[i], out[j]); // validates internally
    return out;
}

struct LiftResult {
    std::vector<Transversal> path; // parent-coordinate; front() is the start member
};

// Transport a path of G' into G, starting from a given member of M(front).
// Follows the transformation lemma's cases: a move inside one zone replays as
// a single oplus; a move across the Y(W) boundary costs one or two moves
// through b in B n W (or back out through A).
inline LiftResult lift_path(const SwapContext& ctx, const std::vector<Transversal>& child_path,
                            const Transversal& start) {
    if (child_path.empty()) fail_precondition("lift_path needs a nonempty child path");
    for (size_t i = 1; i < child_path.size(); ++i)
        if (!it_adjacent(ctx.child, child_path[i - 1], child_path[i]))
            throw error(error::category::precondition, "NotAdjacent",
                        "child path edge " + std::to_string(i - 1) + " -> " + std::to_string(i));
    {
        auto m0 = lift_transversal(ctx, child_path.front(), false);
        if (!std::binary_search(m0.begin(), m0.end(), start))
            fail_precondition("start transversal is not a member of M(front)");
    }

    LiftResult out;
    out.path.push_back(start);
    auto current = [&]() -> const Transversal& { return out.path.back(); };
    auto push = [&](const Transversal& next) {
        ITRANS_CHECK(detail::it_adjacent_unchecked(ctx.parent, current(), next),
                     "lifted move is not a reconfiguration edge");
        out.path.push_back(next);
    };

    for (size_t i = 1; i < child_path.size(); ++i) {
        const Transversal& s1 = child_path[i - 1];
        const Transversal& s2 = child_path[i];
        std::vector<int> removed = set_difference(s1.vertices(), s2.vertices());
        std::vector<int> added = set_difference(s2.vertices(), s1.vertices());
        ITRANS_CHECK(removed.size() == 1 && added.size() == 1, "child edge must swap one vertex");
        const int v = ctx.child_to_parent_vertex[static_cast<size_t>(removed.front())];
        const int w = ctx.child_to_parent_vertex[static_cast<size_t>(added.front())];
        const bool v_in_y = ctx.parent.block_of(v) == ctx.donor_block;
        const bool w_in_y = ctx.parent.block_of(w) == ctx.donor_block;
        const int child_block = ctx.child.block_of(removed.front());
        const int pb = ctx.child_to_parent_block[static_cast<size_t>(child_block)];

        if (v_in_y == w_in_y) {
            push(oplus(ctx.parent, current(), w));
        } else if (!v_in_y) { // crossing into Y(pb)
            if (detail::y_blocks_of(ctx, s1).empty()) {
                push(oplus(ctx.parent, current(), w)); // w takes the U slot from a in A
                push(oplus(ctx.parent, current(), ctx.b_in_block(pb).front()));
            } else {
                push(oplus(ctx.parent, current(), ctx.b_in_block(pb).front()));
            }
        } else { // crossing out of Y(pb)
            const auto y2 = detail::y_blocks_of(ctx, s2);
            if (y2.empty()) {
                push(oplus(ctx.parent, current(), w)); // w retakes pb from b
                push(oplus(ctx.parent, current(), ctx.side_a.front()));
            } else if (current().vertex_in_block(ctx.parent, ctx.donor_block) == v) {
                // the U slot currently holds v itself: park another Y-vertex first
                int y_stay = -1;
                for (int pv : detail::parent_vertices_of(ctx, s2))
                    if (ctx.parent.block_of(pv) == ctx.donor_block) {
                        y_stay = pv;
                        break;
                    }
                ITRANS_CHECK(y_stay != -1, "nonempty Y'_{S2} must offer a resting vertex");
                push(oplus(ctx.parent, current(), y_stay));
                push(oplus(ctx.parent, current(), w));
            } else {
                push(oplus(ctx.parent, current(), w));
            }
        }

        auto m = lift_transversal(ctx, s2, false);
        ITRANS_CHECK(std::binary_search(m.begin(), m.end(), current()),
                     "lifted path left M(S) after a child edge");
    }
    return out;
}

} // namespace itrans

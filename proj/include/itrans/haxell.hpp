#pragma once

// The augmenting-sequence descent. find_it builds an independent transversal
// by descending through feasible tuples (S, {}, v): extend the sequence while
// the tail degree is positive, otherwise resolve the zero tail by growing S or
// replacing one S-vertex and truncating. Every step strictly decreases the
// tuple order, which is asserted, and the step count is bounded by the size
// of the key space.
//
// reconfigure_avoiding descends on tuples (T \ X, T n X, v) over transversals
// T reachable from S, with all sequence vertices outside X, until T avoids X.
// clear_neighbours runs that descent on the sub-instance induced by a block
// set R and replays the same moves on both members of a pair that agrees
// on R.

#include "itrans/error.hpp"
#include "itrans/feasible.hpp"
#include "itrans/instance.hpp"
#include "itrans/transversal.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace itrans {

struct DescentStep {
    std::string move; // "extend", "grow", "swap"
    int vertex = -1;
    TupleKey key; // key after the step
};

struct FindItResult {
    Transversal transversal;
    std::vector<DescentStep> trace;
    bool guaranteed = false; // thickness >= 2*delta held, so success was forced
};

namespace detail {

// Lowest-index vertex of V_{B_m} (minus `excluded`) with no neighbour in C_m.
inline int lowest_extension(const Instance& inst, const FeasibleTuple& tuple,
                            const std::vector<int>& excluded) {
    const auto& blocks_m = tuple.block_chain().back();
    const auto& c_m = tuple.forbidden_chain().back();
    std::vector<char> eligible(static_cast<size_t>(inst.n()), 0);
    for (int b : blocks_m)
        for (int v : inst.block(b)) eligible[static_cast<size_t>(v)] = 1;
    for (int v : excluded) eligible[static_cast<size_t>(v)] = 0;
    std::vector<char> in_c(static_cast<size_t>(inst.n()), 0);
    for (int v : c_m) in_c[static_cast<size_t>(v)] = 1;
    for (int v = 0; v < inst.n(); ++v) {
        if (!eligible[static_cast<size_t>(v)]) continue;
        bool blocked = false;
        for (int u : inst.graph().neighbours(v))
            if (in_c[static_cast<size_t>(u)]) {
                blocked = true;
                break;
            }
        if (!blocked) return v;
    }
    return -1;
}

// Smallest k with v in V_{B_k}; -1 if none.
inline int first_chain_index(const Instance& inst, const FeasibleTuple& tuple, int v) {
    const int b = inst.block_of(v);
    for (size_t k = 0; k < tuple.block_chain().size(); ++k)
        if (std::binary_search(tuple.blocks_at(k).begin(), tuple.blocks_at(k).end(), b))
            return static_cast<int>(k);
    return -1;
}

} // namespace detail

inline FindItResult find_it(const Instance& inst) {
    FindItResult result;
    result.guaranteed = inst.haxell_thick();

    if (inst.delta() == 0) { // edgeless: any transversal is an IT
        std::vector<int> vs;
        for (const auto& b : inst.blocks()) vs.push_back(b.front());
        result.transversal = Transversal(std::move(vs));
        return result;
    }

    Transversal s;
    std::vector<int> seq;
    const long long bound = descent_key_space_bound(inst);
    long long steps = 0;

    FeasibleTuple tuple(inst, s, {}, seq);
    while (static_cast<int>(s.size()) < inst.num_blocks()) {
        ITRANS_CHECK(++steps <= bound, "descent exceeded its key-space bound");
        const TupleKey before = tuple.key();
        DescentStep step;

        if (seq.empty() || tuple.degrees().back() > 0) {
            int v = detail::lowest_extension(inst, tuple, {});
            if (v == -1) {
                if (result.guaranteed)
                    fail_internal("CountingFailed",
                                  "no extension vertex on a 2*delta-thick instance");
                fail_precondition("thickness " + std::to_string(inst.thickness()) +
                                  " < 2*delta = " + std::to_string(2 * inst.delta()) +
                                  ": descent stuck without an extension vertex");
            }
            seq.push_back(v);
            step.move = "extend";
            step.vertex = v;
        } else {
            int v = seq.back();
            int k = detail::first_chain_index(inst, tuple, v);
            ITRANS_CHECK(k >= 0 && k < static_cast<int>(seq.size()),
                         "zero-tail vertex must enter the chain before the end");
            if (k == 0) {
                auto vs = s.vertices();
                vs.push_back(v);
                s = Transversal(std::move(vs));
                seq.clear();
                step.move = "grow";
            } else {
                s = oplus(inst, s, v);
                seq.resize(static_cast<size_t>(k));
                step.move = "swap";
            }
            step.vertex = v;
            ITRANS_CHECK(is_independent(inst, s), "descent produced a dependent partial");
        }

        tuple = FeasibleTuple(inst, s, {}, seq);
        step.key = tuple.key();
        ITRANS_CHECK(key_strictly_less(step.key, before), "descent step did not decrease");
        result.trace.push_back(std::move(step));
    }

    ITRANS_CHECK(is_full_it(inst, s), "descent ended on a non-IT");
    result.transversal = std::move(s);
    return result;
}

struct PathResult {
    std::vector<Transversal> path; // path[0] is the start; consecutive entries adjacent
};

// Reconfigure a full IT S to one avoiding X, via reconfigurability-graph
// moves whose sequence vertices stay outside X. delta_bound lets a caller
// supply the ambient degree bound when operating on an induced sub-instance
// whose own max degree is smaller (the counting argument needs the ambient
// bound, not the local one).
inline PathResult reconfigure_avoiding(const Instance& inst, const Transversal& s,
                                       std::vector<int> x, int delta_bound = -1) {
    if (!is_full_it(inst, s))
        throw error(error::category::precondition, "NotAnIT", to_string(s));
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());

    PathResult result;
    result.path.push_back(s);
    if (set_intersection(s.vertices(), x).empty()) return result;

    if (delta_bound < 0) delta_bound = inst.delta();
    if (static_cast<int>(x.size()) >= delta_bound)
        fail_precondition("|X| = " + std::to_string(x.size()) + " must be < delta bound " +
                          std::to_string(delta_bound));
    if (inst.thickness() < 2 * delta_bound)
        fail_precondition("thickness " + std::to_string(inst.thickness()) + " < 2*" +
                          std::to_string(delta_bound));

    Transversal t = s;
    std::vector<int> seq;
    const long long bound = descent_key_space_bound(inst);
    long long steps = 0;

    while (true) {
        Transversal t_keep(set_difference(t.vertices(), x));
        std::vector<int> t_in_x = set_intersection(t.vertices(), x);
        if (t_in_x.empty()) return result;

        ITRANS_CHECK(++steps <= bound, "avoidance descent exceeded its key-space bound");
        FeasibleTuple tuple(inst, t_keep, t_in_x, seq);
        const TupleKey before = tuple.key();

        if (!seq.empty() && tuple.degrees().back() == 0) {
            int v = seq.back();
            Transversal next = oplus(inst, t, v);
            ITRANS_CHECK(detail::it_adjacent_unchecked(inst, t, next),
                         "avoidance move is not a reconfiguration edge");
            result.path.push_back(next);
            int k = detail::first_chain_index(inst, tuple, v);
            ITRANS_CHECK(k >= 0, "zero-tail vertex outside the block chain");
            if (k == 0)
                seq.clear(); // v lands in cl(T n X): one X-vertex evicted
            else
                seq.resize(static_cast<size_t>(k));
            t = std::move(next);
        } else {
            int v = detail::lowest_extension(inst, tuple, x);
            ITRANS_CHECK(v != -1, "counting bound failed to produce an extension");
            seq.push_back(v);
        }

        Transversal t_keep2(set_difference(t.vertices(), x));
        FeasibleTuple after(inst, t_keep2, set_intersection(t.vertices(), x), seq);
        ITRANS_CHECK(key_strictly_less(after.key(), before),
                     "avoidance step did not decrease");
    }
}

struct PairPaths {
    std::vector<Transversal> s_path, t_path; // front() = inputs, back() = results
};

// Corollary machinery: S and T agree on the blocks R, the pair's part outside
// R has all neighbours outside V_R, and x (outside R, with a neighbour
// outside V_R) wants its V_R-neighbourhood vacated. The avoidance descent
// runs on the sub-instance induced by R and is replayed on both S and T.
inline PairPaths clear_neighbours(const Instance& inst, const std::vector<int>& r_blocks,
                                  const Transversal& s, const Transversal& t, int x) {
    if (!is_full_it(inst, s))
        throw error(error::category::precondition, "NotAnIT", "S " + to_string(s));
    if (!is_full_it(inst, t))
        throw error(error::category::precondition, "NotAnIT", "T " + to_string(t));

    PairPaths out;
    out.s_path.push_back(s);
    out.t_path.push_back(t);
    if (r_blocks.empty()) return out;

    std::vector<char> in_r_block(static_cast<size_t>(inst.num_blocks()), 0);
    for (int b : r_blocks) in_r_block[static_cast<size_t>(b)] = 1;
    auto in_vr = [&](int v) { return in_r_block[static_cast<size_t>(inst.block_of(v))] != 0; };

    for (int b : r_blocks)
        if (s.vertex_in_block(inst, b) != t.vertex_in_block(inst, b))
            fail_precondition("S and T disagree on block " + std::to_string(b));
    for (int v : set_union(s.vertices(), t.vertices()))
        if (!in_vr(v))
            for (int u : inst.graph().neighbours(v))
                if (in_vr(u))
                    fail_precondition("pair vertex " + std::to_string(v) +
                                      " outside R has neighbour " + std::to_string(u) +
                                      " inside V_R");
    if (in_vr(x)) fail_precondition("x = " + std::to_string(x) + " lies inside V_R");
    bool outside_neighbour = false;
    std::vector<int> x_in_r;
    for (int u : inst.graph().neighbours(x)) {
        if (in_vr(u))
            x_in_r.push_back(u);
        else
            outside_neighbour = true;
    }
    if (!outside_neighbour)
        fail_precondition("x = " + std::to_string(x) +
                          " has no neighbour outside V_R, so |X| < delta is not implied");
    if (x_in_r.empty()) return out; // nothing to vacate

    InducedInstance sub = induced_on_blocks(inst, r_blocks);
    std::vector<int> r_vertices;
    for (int v : s.vertices())
        if (in_vr(v)) r_vertices.push_back(sub.from_parent[static_cast<size_t>(v)]);
    std::vector<int> x_sub;
    for (int u : x_in_r) x_sub.push_back(sub.from_parent[static_cast<size_t>(u)]);

    PathResult sub_path = reconfigure_avoiding(sub.instance, Transversal(std::move(r_vertices)),
                                               x_sub, inst.delta());

    // Replay each sub-instance move on both sides of the pair.
    for (size_t i = 1; i < sub_path.path.size(); ++i) {
        std::vector<int> fresh = set_difference(sub_path.path[i].vertices(),
                                                sub_path.path[i - 1].vertices());
        ITRANS_CHECK(fresh.size() == 1, "sub-instance path steps must change one vertex");
        int pv = sub.to_parent[static_cast<size_t>(fresh.front())];
        out.s_path.push_back(oplus(inst, out.s_path.back(), pv));
        out.t_path.push_back(oplus(inst, out.t_path.back(), pv));
    }

    // Post: agreement on R kept, outside part untouched, x's V_R-neighbourhood clear.
    const Transversal& s_x = out.s_path.back();
    const Transversal& t_x = out.t_path.back();
    for (int u : x_in_r)
        ITRANS_CHECK(!s_x.contains(u) && !t_x.contains(u),
                     "clear_neighbours left a neighbour of x in place");
    return out;
}

} // namespace itrans

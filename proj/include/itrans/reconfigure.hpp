#pragma once

// Constructive reconfiguration between two independent transversals of an
// irreducible 2*delta-thick instance.
//
// Instances that are a disjoint union of |U| copies of K_{delta,delta} are
// dispatched to a dedicated solver. On such an instance every transversal
// uses at most one side per copy, transversals subordinate to a common side
// selection are mutually reachable by blockwise moves, and a single move
// never flips a copy's side, so the reconfigurability components correspond
// exactly to the components of a meta-graph on feasible side selections
// (adjacent when they differ on one copy and share a transversal avoiding
// that copy). Feasibility and sharing are bipartite matchings between blocks
// and side-compatible vertices.
//
// Everything else runs the pair descent on states (S, T, v) where v is
// augmenting for (S n T, S ^ T), applying the cheapest applicable move class
// in a fixed order:
//   1. extend the sequence (also covers the degree>=2 resolution, whose
//      counting bound guarantees an extension exists),
//   2. resolve a zero tail by playing v_m on both sides,
//   3. at an empty stable sequence with both parts nonempty, the boundary
//      move: clear the R-neighbourhood of a crossing vertex x and play x on
//      the side that tolerates it (key unchanged, an extension is then
//      forced),
//   4. at a stable all-ones sequence, locate the K_{delta,delta} component
//      through x_m v_m, swap it away, recurse on a non-extremal irreducible
//      component of the smaller instance, and lift the path back (agreement
//      strictly grows). When a structural claim fails en route, the failure
//      itself yields a strictly decreasing move.
// A stall with S n T empty is refuted by an explicit agreement-raising move;
// it cannot certify (that would force the extremal structure, which was
// dispatched away).

#include "itrans/error.hpp"
#include "itrans/feasible.hpp"
#include "itrans/haxell.hpp"
#include "itrans/instance.hpp"
#include "itrans/swap.hpp"
#include "itrans/transversal.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace itrans {

// Lemma-style matching certificate for a stalled pair with no agreement:
// S u T induces a perfect matching lifting to a block permutation sigma, and
// the copies (R_U, B_{sigma(U)}) tile the graph.
struct ExtremalCertificate {
    std::vector<int> blocks; // block indices covered (the whole instance here)
    std::vector<int> sigma;  // permutation over positions of `blocks`
    std::vector<std::pair<std::vector<int>, std::vector<int>>> sides; // (R_U, B_{sigma(U)})
};

struct KddCopy {
    std::vector<int> p_side, q_side;
};

// Why a pair on an extremal instance is stuck: the copy decomposition, the
// side each endpoint uses per copy (0 none, 1 P, 2 Q), and, when the pair
// disagrees everywhere and the stalled structure is present, the matching
// certificate.
struct Obstruction {
    std::vector<KddCopy> copies;
    std::vector<int> s_sides, t_sides;
    std::optional<ExtremalCertificate> stall;
};

struct ReconfigureOutcome {
    std::optional<std::vector<Transversal>> path;
    std::optional<Obstruction> obstruction;
    // move-class usage, recursion included
    int swaps = 0;
    int boundary_moves = 0;
    int refutations = 0;
    int escapee_moves = 0;
    int perturbations = 0;
};

namespace detail {

struct CertificateOutcome {
    std::optional<ExtremalCertificate> certificate;
    struct Refutation {
        int s_vertex = -1, t_vertex = -1, witness = -1;
    };
    std::optional<Refutation> refutation;
    int failed_step = 0;
};

// Verifies the forced-structure chain for a pair with S n T empty in which
// every vertex already has a neighbour in S u T. A failed completeness check
// is first turned into an explicit agreement-raising move when one exists;
// only a genuinely impossible state reports a failed step.
inline CertificateOutcome certificate_or_refute(const Instance& inst, const Transversal& s,
                                                const Transversal& t) {
    CertificateOutcome out;
    const auto pair_union = set_union(s.vertices(), t.vertices());

    auto uncovered = [&](const std::vector<int>& pool) {
        for (int v = 0; v < inst.n(); ++v) {
            bool covered = false;
            for (int u : inst.graph().neighbours(v))
                if (std::binary_search(pool.begin(), pool.end(), u)) {
                    covered = true;
                    break;
                }
            if (!covered) return v;
        }
        return -1;
    };

    // step 1: every vertex meets S u T
    if (uncovered(pair_union) != -1) {
        out.failed_step = 1;
        return out;
    }
    // step 2: the counting chain collapses to equalities
    const int delta = inst.delta();
    if (inst.n() != 2 * delta * inst.num_blocks()) {
        out.failed_step = 2;
        return out;
    }
    std::vector<int> pair_degree(static_cast<size_t>(inst.n()), 0);
    for (int v = 0; v < inst.n(); ++v)
        for (int u : inst.graph().neighbours(v))
            if (std::binary_search(pair_union.begin(), pair_union.end(), u))
                ++pair_degree[static_cast<size_t>(v)];
    for (int v = 0; v < inst.n(); ++v)
        if (pair_degree[static_cast<size_t>(v)] != 1) {
            out.failed_step = 2;
            return out;
        }
    for (int u : pair_union)
        if (inst.graph().degree(u) != delta) {
            out.failed_step = 2;
            return out;
        }
    // step 3: S u T induces a perfect matching, lifted to sigma
    std::vector<int> sigma(static_cast<size_t>(inst.num_blocks()), -1);
    for (int sv : s.vertices()) {
        int partner = -1;
        for (int u : inst.graph().neighbours(sv))
            if (std::binary_search(pair_union.begin(), pair_union.end(), u)) partner = u;
        if (partner == -1 || !t.contains(partner)) {
            out.failed_step = 3;
            return out;
        }
        sigma[static_cast<size_t>(inst.block_of(sv))] = inst.block_of(partner);
    }
    {
        std::vector<char> seen(static_cast<size_t>(inst.num_blocks()), 0);
        for (int img : sigma) {
            if (img < 0 || seen[static_cast<size_t>(img)]) {
                out.failed_step = 3;
                return out;
            }
            seen[static_cast<size_t>(img)] = 1;
        }
    }
    // step 4: R_U complete to B_{sigma(U)}; a missing edge either refutes the
    // stall outright or is impossible
    std::vector<std::vector<int>> r_side(static_cast<size_t>(inst.num_blocks()));
    std::vector<std::vector<int>> b_side(static_cast<size_t>(inst.num_blocks()));
    for (int v = 0; v < inst.n(); ++v) {
        int nb = -1;
        for (int u : inst.graph().neighbours(v))
            if (std::binary_search(pair_union.begin(), pair_union.end(), u)) nb = u;
        if (t.contains(nb))
            r_side[static_cast<size_t>(inst.block_of(v))].push_back(v);
        else
            b_side[static_cast<size_t>(inst.block_of(v))].push_back(v);
    }
    for (int u = 0; u < inst.num_blocks(); ++u) {
        for (int sv : r_side[static_cast<size_t>(u)]) {
            for (int tv : b_side[static_cast<size_t>(sigma[static_cast<size_t>(u)])]) {
                if (inst.graph().has_edge(sv, tv)) continue;
                Transversal s2 = oplus(inst, s, sv);
                Transversal t2 = oplus(inst, t, tv);
                int w = uncovered(set_union(s2.vertices(), t2.vertices()));
                if (w != -1) {
                    out.refutation = CertificateOutcome::Refutation{sv, tv, w};
                    return out;
                }
                out.failed_step = 4; // coverage held, so sv ~ tv was forced: impossible
                return out;
            }
        }
    }
    // step 5: side sizes
    for (int u = 0; u < inst.num_blocks(); ++u)
        if (static_cast<int>(r_side[static_cast<size_t>(u)].size()) != delta ||
            static_cast<int>(b_side[static_cast<size_t>(u)].size()) != delta) {
            out.failed_step = 5;
            return out;
        }

    ExtremalCertificate cert;
    for (int u = 0; u < inst.num_blocks(); ++u) cert.blocks.push_back(u);
    cert.sigma = sigma;
    for (int u = 0; u < inst.num_blocks(); ++u)
        cert.sides.emplace_back(r_side[static_cast<size_t>(u)],
                                b_side[static_cast<size_t>(sigma[static_cast<size_t>(u)])]);
    out.certificate = std::move(cert);
    return out;
}

} // namespace detail

// Public verification of the extremal structure for a stalled pair.
inline ExtremalCertificate extremal_certificate(const Instance& inst, const Transversal& s,
                                                const Transversal& t) {
    if (!is_full_it(inst, s) || !is_full_it(inst, t))
        throw error(error::category::precondition, "NotAnIT", "certificate needs two full ITs");
    if (!set_intersection(s.vertices(), t.vertices()).empty())
        fail_precondition("certificate requires S n T empty");
    auto out = detail::certificate_or_refute(inst, s, t);
    if (out.certificate) return *out.certificate;
    int step = out.failed_step == 0 ? 4 : out.failed_step; // a refutation is a step-4 failure
    throw error(error::category::internal, "CertificateFailed",
                "extremal structure violated at step " + std::to_string(step));
}

namespace detail {

// Both-sided move bookkeeping. Only real changes are recorded, and every
// recorded step is checked to be a reconfigurability-graph edge.
struct PairTracker {
    const Instance& inst;
    std::vector<Transversal> s_path, t_path;

    PairTracker(const Instance& i, Transversal s0, Transversal t0) : inst(i) {
        s_path.push_back(std::move(s0));
        t_path.push_back(std::move(t0));
    }
    const Transversal& s() const { return s_path.back(); }
    const Transversal& t() const { return t_path.back(); }

    void push_s(const Transversal& next) {
        if (next == s()) return;
        ITRANS_CHECK(it_adjacent_unchecked(inst, s(), next), "S-side move is not an edge");
        s_path.push_back(next);
    }
    void push_t(const Transversal& next) {
        if (next == t()) return;
        ITRANS_CHECK(it_adjacent_unchecked(inst, t(), next), "T-side move is not an edge");
        t_path.push_back(next);
    }
    void apply_s(int v) { push_s(oplus(inst, s(), v)); }
    void apply_t(int v) { push_t(oplus(inst, t(), v)); }
    void apply_both(int v) {
        apply_s(v);
        apply_t(v);
    }
    void splice(const PairPaths& pair) {
        ITRANS_CHECK(pair.s_path.front() == s() && pair.t_path.front() == t(),
                     "spliced pair segment does not start at the current pair");
        for (size_t i = 1; i < pair.s_path.size(); ++i) push_s(pair.s_path[i]);
        for (size_t i = 1; i < pair.t_path.size(); ++i) push_t(pair.t_path[i]);
    }

    std::vector<Transversal> assemble() const {
        ITRANS_CHECK(s() == t(), "pair not yet joined");
        std::vector<Transversal> full = s_path;
        for (size_t i = t_path.size(); i-- > 1;) full.push_back(t_path[i - 1]);
        return full;
    }
};

inline std::vector<int> pair_blocks_outside(const Instance& inst, const std::vector<int>& inside) {
    std::vector<int> out;
    for (int b = 0; b < inst.num_blocks(); ++b)
        if (!std::binary_search(inside.begin(), inside.end(), b)) out.push_back(b);
    return out;
}

// ---- dedicated solver for disjoint K_{delta,delta} unions ----------------

struct KddStructure {
    std::vector<KddCopy> copies;
    std::vector<int> copy_of;   // per vertex
    std::vector<int> side_of;   // per vertex: 1 = P, 2 = Q
};

inline KddStructure kdd_structure(const Instance& inst) {
    KddStructure st;
    st.copy_of.assign(static_cast<size_t>(inst.n()), -1);
    st.side_of.assign(static_cast<size_t>(inst.n()), 0);
    for (int v = 0; v < inst.n(); ++v) {
        if (st.copy_of[static_cast<size_t>(v)] != -1) continue;
        int id = static_cast<int>(st.copies.size());
        KddCopy copy;
        std::vector<int> stack{v};
        st.copy_of[static_cast<size_t>(v)] = id;
        st.side_of[static_cast<size_t>(v)] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            (st.side_of[static_cast<size_t>(u)] == 1 ? copy.p_side : copy.q_side).push_back(u);
            for (int w : inst.graph().neighbours(u))
                if (st.copy_of[static_cast<size_t>(w)] == -1) {
                    st.copy_of[static_cast<size_t>(w)] = id;
                    st.side_of[static_cast<size_t>(w)] = 3 - st.side_of[static_cast<size_t>(u)];
                    stack.push_back(w);
                }
        }
        std::sort(copy.p_side.begin(), copy.p_side.end());
        std::sort(copy.q_side.begin(), copy.q_side.end());
        st.copies.push_back(std::move(copy));
    }
    return st;
}

// One transversal using only vertices allowed(v), via bipartite matching of
// blocks to vertices; empty optional when infeasible.
inline std::optional<Transversal> matching_transversal(
    const Instance& inst, const std::vector<char>& allowed) {
    const int nb = inst.num_blocks();
    std::vector<int> match_of_vertex(static_cast<size_t>(inst.n()), -1);
    std::vector<int> match_of_block(static_cast<size_t>(nb), -1);
    std::vector<char> visited;
    auto try_block = [&](auto&& self, int b) -> bool {
        for (int v : inst.block(b)) {
            if (!allowed[static_cast<size_t>(v)] || visited[static_cast<size_t>(v)]) continue;
            visited[static_cast<size_t>(v)] = 1;
            if (match_of_vertex[static_cast<size_t>(v)] == -1 ||
                self(self, match_of_vertex[static_cast<size_t>(v)])) {
                match_of_vertex[static_cast<size_t>(v)] = b;
                match_of_block[static_cast<size_t>(b)] = v;
                return true;
            }
        }
        return false;
    };
    for (int b = 0; b < nb; ++b) {
        visited.assign(static_cast<size_t>(inst.n()), 0);
        if (!try_block(try_block, b)) return std::nullopt;
    }
    std::vector<int> vs;
    for (int b = 0; b < nb; ++b) vs.push_back(match_of_block[static_cast<size_t>(b)]);
    return Transversal(std::move(vs));
}

// Blockwise morph between two transversals subordinate to a common side
// selection; every step is a legal reconfiguration edge.
inline void kdd_morph(const Instance& inst, std::vector<Transversal>& path,
                      const Transversal& target) {
    for (int b = 0; b < inst.num_blocks(); ++b) {
        int tv = target.vertex_in_block(inst, b);
        if (path.back().vertex_in_block(inst, b) != tv) {
            Transversal next = oplus(inst, path.back(), tv);
            ITRANS_CHECK(it_adjacent_unchecked(inst, path.back(), next),
                         "side-respecting morph move is not an edge");
            path.push_back(std::move(next));
        }
    }
    ITRANS_CHECK(path.back() == target, "morph missed its target");
}

inline ReconfigureOutcome kdd_reconfigure(const Instance& inst, const Transversal& s0,
                                          const Transversal& t0) {
    ReconfigureOutcome result;
    const KddStructure st = kdd_structure(inst);
    const int m = static_cast<int>(st.copies.size());
    if (m > 20)
        throw error(error::category::precondition, "CapExceeded",
                    "side-selection space 2^" + std::to_string(m) + " is too large");

    auto sides_used = [&](const Transversal& t) {
        std::vector<int> sides(static_cast<size_t>(m), 0);
        for (int v : t.vertices()) sides[static_cast<size_t>(st.copy_of[static_cast<size_t>(v)])] =
            st.side_of[static_cast<size_t>(v)];
        return sides;
    };

    // Side selections are bitmasks: bit c set means copy c uses side Q.
    auto feasible = [&](unsigned mask) {
        std::vector<char> allowed(static_cast<size_t>(inst.n()), 0);
        for (int v = 0; v < inst.n(); ++v) {
            int want = (mask >> st.copy_of[static_cast<size_t>(v)]) & 1 ? 2 : 1;
            allowed[static_cast<size_t>(v)] = st.side_of[static_cast<size_t>(v)] == want;
        }
        return matching_transversal(inst, allowed);
    };
    // Witness avoiding copy `skip`, subordinate to mask on the rest.
    auto witness_avoiding = [&](unsigned mask, int skip) {
        std::vector<char> allowed(static_cast<size_t>(inst.n()), 0);
        for (int v = 0; v < inst.n(); ++v) {
            int c = st.copy_of[static_cast<size_t>(v)];
            if (c == skip) continue;
            int want = (mask >> c) & 1 ? 2 : 1;
            allowed[static_cast<size_t>(v)] = st.side_of[static_cast<size_t>(v)] == want;
        }
        return matching_transversal(inst, allowed);
    };

    auto extend_to_mask = [&](const std::vector<int>& sides) {
        unsigned mask = 0;
        for (int c = 0; c < m; ++c)
            if (sides[static_cast<size_t>(c)] == 2) mask |= 1u << c;
        return mask; // untouched copies default to side P
    };
    const std::vector<int> s_sides = sides_used(s0);
    const std::vector<int> t_sides = sides_used(t0);
    const unsigned start = extend_to_mask(s_sides);
    auto is_goal = [&](unsigned mask) {
        for (int c = 0; c < m; ++c) {
            int side = t_sides[static_cast<size_t>(c)];
            if (side != 0 && side != (((mask >> c) & 1) ? 2 : 1)) return false;
        }
        return true;
    };

    // BFS over feasible side selections; edges flip one copy and carry a
    // witness transversal avoiding that copy.
    std::vector<int> prev_mask(1u << m, -2);
    std::vector<Transversal> edge_witness(1u << m);
    std::vector<unsigned> queue{start};
    prev_mask[start] = -1;
    ITRANS_CHECK(feasible(start).has_value(), "start side selection must be feasible");
    unsigned goal_mask = 0;
    bool found = is_goal(start);
    if (found) goal_mask = start;
    for (size_t qi = 0; qi < queue.size() && !found; ++qi) {
        unsigned mask = queue[qi];
        for (int c = 0; c < m && !found; ++c) {
            unsigned next = mask ^ (1u << c);
            if (prev_mask[next] != -2) continue;
            auto w = witness_avoiding(mask, c);
            if (!w) continue;
            if (!feasible(next)) continue;
            prev_mask[next] = static_cast<int>(mask);
            edge_witness[next] = *w;
            queue.push_back(next);
            if (is_goal(next)) {
                found = true;
                goal_mask = next;
            }
        }
    }

    if (!found) {
        Obstruction ob;
        ob.copies = st.copies;
        ob.s_sides = s_sides;
        ob.t_sides = t_sides;
        if (set_intersection(s0.vertices(), t0.vertices()).empty()) {
            auto cr = certificate_or_refute(inst, s0, t0);
            if (cr.certificate) ob.stall = std::move(cr.certificate);
        }
        result.obstruction = std::move(ob);
        return result;
    }

    // Replay: morph between consecutive witnesses inside their shared side
    // selections, then morph onto T0.
    std::vector<unsigned> masks;
    for (unsigned mask = goal_mask;; mask = static_cast<unsigned>(prev_mask[mask])) {
        masks.push_back(mask);
        if (prev_mask[mask] == -1) break;
    }
    std::reverse(masks.begin(), masks.end());
    std::vector<Transversal> path{s0};
    for (size_t i = 1; i < masks.size(); ++i) kdd_morph(inst, path, edge_witness[masks[i]]);
    kdd_morph(inst, path, t0);
    result.path = std::move(path);
    return result;
}

} // namespace detail

inline ReconfigureOutcome constructive_reconfigure(const Instance& inst, const Transversal& s0,
                                                   const Transversal& t0) {
    if (!is_full_it(inst, s0))
        throw error(error::category::precondition, "NotAnIT", "S0 " + to_string(s0));
    if (!is_full_it(inst, t0))
        throw error(error::category::precondition, "NotAnIT", "T0 " + to_string(t0));

    ReconfigureOutcome result;

    if (inst.delta() == 0) { // edgeless: blockwise moves always legal
        std::vector<Transversal> path{s0};
        for (int b = 0; b < inst.num_blocks(); ++b) {
            int tv = t0.vertex_in_block(inst, b);
            if (path.back().vertex_in_block(inst, b) != tv)
                path.push_back(oplus(inst, path.back(), tv));
        }
        result.path = std::move(path);
        return result;
    }

    if (!inst.haxell_thick())
        fail_precondition("thickness " + std::to_string(inst.thickness()) + " < 2*delta = " +
                          std::to_string(2 * inst.delta()));
    if (!is_irreducible(inst)) fail_precondition("instance is reducible");

    if (is_disjoint_kdd_union(inst)) return detail::kdd_reconfigure(inst, s0, t0);

    detail::PairTracker pair(inst, s0, t0);
    std::vector<int> seq;
    const long long bound = 2 * descent_key_space_bound(inst) + 16;
    long long steps = 0;
    std::optional<TupleKey> prev_key;
    bool prev_neutral = false;

    while (!(pair.s() == pair.t())) {
        ITRANS_CHECK(++steps <= bound, "pair descent exceeded its key-space bound");

        Transversal common = trans_intersection(pair.s(), pair.t());
        std::vector<int> diff = sym_diff(pair.s(), pair.t());
        FeasibleTuple tuple(inst, common, diff, seq);
        // Eq. (2) specialisation: the missed blocks are exactly the
        // disagreement blocks, half the symmetric difference.
        ITRANS_CHECK(tuple.blocks_at(0).size() * 2 == diff.size(),
                     "pair tuple missed-block count mismatch");

        const TupleKey key = tuple.key();
        if (prev_key) {
            if (prev_neutral)
                ITRANS_CHECK(compare_keys(key, *prev_key) == TupleOrder::equal,
                             "neutral move changed the tuple key");
            else
                ITRANS_CHECK(key_strictly_less(key, *prev_key), "pair move did not decrease");
        }
        const bool was_neutral = prev_neutral;
        prev_key = key;
        prev_neutral = false;

        const auto& degrees = tuple.degrees();
        const size_t m = seq.size();

        // class 1: extend
        if (m == 0 || degrees.back() >= 1) {
            int u = detail::lowest_extension(inst, tuple, {});
            if (u != -1) {
                seq.push_back(u);
                continue;
            }
            ITRANS_CHECK(std::all_of(degrees.begin(), degrees.end(), [](int d) { return d <= 1; }),
                         "a degree >= 2 guarantees an extension, but none was found");
            ITRANS_CHECK(!was_neutral, "a neutral move must be followed by a strict one");
        }

        // class 2: zero tail
        if (m >= 1 && degrees.back() == 0) {
            int v = seq.back();
            int k = detail::first_chain_index(inst, tuple, v);
            ITRANS_CHECK(k >= 0 && k < static_cast<int>(m), "zero-tail chain index out of range");
            pair.apply_both(v);
            if (k == 0)
                seq.clear();
            else
                seq.resize(static_cast<size_t>(k));
            continue;
        }

        if (m == 0) {
            if (common.empty()) {
                // stalled with no agreement: on a non-extremal instance the
                // forced-structure chain must break, yielding an explicit
                // agreement-raising move
                auto cr = detail::certificate_or_refute(inst, pair.s(), pair.t());
                ITRANS_CHECK(!cr.certificate.has_value(),
                             "extremal structure on an instance that is not a K_dd union");
                if (cr.refutation) {
                    pair.apply_s(cr.refutation->s_vertex);
                    pair.apply_t(cr.refutation->t_vertex);
                    pair.apply_both(cr.refutation->witness);
                    ++result.refutations;
                    seq.clear();
                    continue; // agreement went from zero to positive: strict
                }
                fail_internal("CertificateFailed", "extremal structure violated at step " +
                                                       std::to_string(cr.failed_step));
            }
            // boundary move: some vertex outside the agreement blocks sees V_R
            std::vector<int> r_blocks = agreement_blocks(inst, pair.s(), pair.t());
            std::vector<char> in_r(static_cast<size_t>(inst.num_blocks()), 0);
            for (int b : r_blocks) in_r[static_cast<size_t>(b)] = 1;
            int x = -1;
            for (int v = 0; v < inst.n() && x == -1; ++v) {
                if (in_r[static_cast<size_t>(inst.block_of(v))]) continue;
                for (int u : inst.graph().neighbours(v))
                    if (in_r[static_cast<size_t>(inst.block_of(u))]) {
                        x = v;
                        break;
                    }
            }
            ITRANS_CHECK(x != -1, "irreducible instance must have a boundary vertex");
            std::vector<int> x_diff_nbrs;
            for (int u : inst.graph().neighbours(x))
                if (std::binary_search(diff.begin(), diff.end(), u)) x_diff_nbrs.push_back(u);
            ITRANS_CHECK(x_diff_nbrs.size() == 1,
                         "boundary vertex must have a unique neighbour in S ^ T");
            pair.splice(clear_neighbours(inst, r_blocks, pair.s(), pair.t(), x));
            if (pair.t().contains(x_diff_nbrs.front()))
                pair.apply_s(x);
            else
                pair.apply_t(x);
            ++result.boundary_moves;
            prev_neutral = true; // same key; the next iteration must extend
            continue;
        }

        // stable all-ones sequence: locate K_{delta,delta} through x_m v_m
        ITRANS_CHECK(std::all_of(degrees.begin(), degrees.end(), [](int d) { return d == 1; }),
                     "stable state must have degree sequence all ones");
        const auto& blocks_m = tuple.blocks_at(m);
        const auto& c_m = tuple.forbidden_at(m);
        {
            // neighbourhood partition of V_{B_m} by C_m
            std::vector<int> hits(static_cast<size_t>(inst.n()), 0);
            for (int u : c_m) {
                for (int w : inst.graph().neighbours(u)) {
                    ITRANS_CHECK(std::binary_search(blocks_m.begin(), blocks_m.end(),
                                                    inst.block_of(w)),
                                 "C_m neighbourhood escapes V_{B_m}");
                    ++hits[static_cast<size_t>(w)];
                }
            }
            for (int b : blocks_m)
                for (int w : inst.block(b))
                    ITRANS_CHECK(hits[static_cast<size_t>(w)] == 1,
                                 "C_m neighbourhoods do not partition V_{B_m}");
        }

        const int v_m = seq.back();
        const auto x_m_set = neighbourhood_in(inst, v_m, common, false);
        ITRANS_CHECK(x_m_set.size() == 1, "d_m = 1 must give a unique agreed neighbour");
        const int x_m = x_m_set.front();
        const int block_x_m = inst.block_of(x_m);
        const std::vector<int> r_blocks = detail::pair_blocks_outside(inst, blocks_m);

        // claim: N(v_m) stays inside x_m's block; an escapee is a strict move
        int escapee = -1;
        for (int u : inst.graph().neighbours(v_m))
            if (inst.block_of(u) != block_x_m) {
                escapee = u;
                break;
            }
        if (escapee != -1) {
            ++result.escapee_moves;
            pair.splice(clear_neighbours(inst, r_blocks, pair.s(), pair.t(), escapee));
            pair.apply_both(escapee);
            int k = detail::first_chain_index(inst, tuple, escapee);
            ITRANS_CHECK(k >= 0 && k <= static_cast<int>(m), "escapee outside the block chain");
            if (k == 0)
                seq.clear(); // new agreement block
            else
                seq.resize(static_cast<size_t>(k)); // d_k drops to zero
            continue;
        }

        const std::vector<int>& side_a = inst.graph().neighbours(v_m);
        const std::vector<int>& side_b = inst.graph().neighbours(x_m);
        ITRANS_CHECK(static_cast<int>(side_a.size()) == inst.delta() &&
                         static_cast<int>(side_b.size()) == inst.delta(),
                     "K sides must have size delta");

        // claim: every neighbour of v_m has the same neighbourhood as x_m;
        // a violator yields a same-key perturbation after which an extension
        // is forced
        int bad_a = -1;
        for (int a : side_a)
            if (inst.graph().neighbours(a) != side_b) {
                bad_a = a;
                break;
            }
        if (bad_a != -1) {
            ++result.perturbations;
            pair.splice(clear_neighbours(inst, r_blocks, pair.s(), pair.t(), bad_a));
            pair.apply_both(bad_a);
            prev_neutral = true;
            continue;
        }
        for (int b : side_b)
            ITRANS_CHECK(inst.graph().neighbours(b) == side_a, "K is not closed on the B side");

        // swap the component away and recurse
        std::vector<int> component = set_union(side_a, side_b);
        SwapContext ctx = swap_instance(inst, component, block_x_m);
        ++result.swaps;

        auto restrict_it = [&](const Transversal& full) {
            std::vector<int> vs;
            for (int v : full.vertices()) {
                int cv = ctx.parent_to_child_vertex[static_cast<size_t>(v)];
                if (cv != -1) vs.push_back(cv);
            }
            Transversal out(std::move(vs));
            ITRANS_CHECK(is_full_it(ctx.child, out), "restriction is not an IT of the child");
            return out;
        };
        Transversal s_child = restrict_it(pair.s());
        Transversal t_child = restrict_it(pair.t());

        auto comps = irreducible_components(ctx.child);
        int target = -1;
        for (size_t i = 0; i < comps.size() && target == -1; ++i)
            if (!is_disjoint_kdd_union(comps[i].instance)) target = static_cast<int>(i);
        ITRANS_CHECK(target != -1,
                     "all-extremal components would make the instance itself extremal");
        const auto& comp = comps[static_cast<size_t>(target)];

        auto to_comp = [&](const Transversal& child_it) {
            std::vector<int> vs;
            for (int v : child_it.vertices()) {
                int cv = comp.from_parent[static_cast<size_t>(v)];
                if (cv != -1) vs.push_back(cv);
            }
            return Transversal(std::move(vs));
        };
        Transversal s_comp = to_comp(s_child);
        Transversal t_comp = to_comp(t_child);
        ITRANS_CHECK(!(s_comp == t_comp),
                     "every irreducible component of the swap must hold a disagreement");

        ReconfigureOutcome rec = constructive_reconfigure(comp.instance, t_comp, s_comp);
        ITRANS_CHECK(rec.path.has_value(), "recursion on a non-extremal component must succeed");
        result.swaps += rec.swaps;
        result.boundary_moves += rec.boundary_moves;
        result.refutations += rec.refutations;
        result.escapee_moves += rec.escapee_moves;
        result.perturbations += rec.perturbations;

        // embed the component path into the child, then lift into the parent
        std::vector<int> fixed = set_difference(t_child.vertices(), [&] {
            std::vector<int> comp_vs;
            for (int v : comp.to_parent) comp_vs.push_back(v);
            std::sort(comp_vs.begin(), comp_vs.end());
            return comp_vs;
        }());
        std::vector<Transversal> child_path;
        for (const auto& p : *rec.path) {
            std::vector<int> vs = fixed;
            for (int v : p.vertices()) vs.push_back(comp.to_parent[static_cast<size_t>(v)]);
            child_path.emplace_back(std::move(vs));
        }
        ITRANS_CHECK(child_path.front() == t_child, "embedded path must start at T's restriction");

        LiftResult lifted = lift_path(ctx, child_path, pair.t());
        for (size_t i = 1; i < lifted.path.size(); ++i) pair.push_t(lifted.path[i]);

        std::vector<int> target_vs = detail::parent_vertices_of(ctx, child_path.back());
        target_vs.push_back(x_m);
        Transversal t_target(std::move(target_vs));
        auto inside = reach_within_m(ctx, child_path.back(), pair.t(), t_target);
        for (size_t i = 1; i < inside.size(); ++i) pair.push_t(inside[i]);

        ITRANS_CHECK(set_intersection(pair.s().vertices(), pair.t().vertices()).size() >
                         common.size(),
                     "swap recursion did not increase agreement");
        seq.clear();
    }

    result.path = pair.assemble();
    return result;
}

} // namespace itrans

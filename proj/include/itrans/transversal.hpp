#pragma once

// Partial and full independent transversals, represented canonically as a
// sorted vertex set, plus the primitive set operators used throughout:
// oplus (one-block replacement), closure, neighbourhoods inside a
// transversal, and the reconfigurability-graph adjacency test.
//
// Independence is deliberately not a type invariant of Transversal; it is
// checked by the operations so that intermediate unions can be represented.

#include "itrans/error.hpp"
#include "itrans/instance.hpp"

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

namespace itrans {

class Transversal {
public:
    Transversal() = default;

    explicit Transversal(std::vector<int> vertices) : v_(std::move(vertices)) {
        std::sort(v_.begin(), v_.end());
        ITRANS_CHECK(std::adjacent_find(v_.begin(), v_.end()) == v_.end(),
                     "transversal vertices must be distinct");
    }

    // Checked construction: at most one vertex per block.
    static Transversal checked(const Instance& inst, std::vector<int> vertices) {
        Transversal t(std::move(vertices));
        std::vector<char> seen(static_cast<size_t>(inst.num_blocks()), 0);
        for (int v : t.v_) {
            if (v < 0 || v >= inst.n())
                fail_input("VertexOutOfRange", "vertex " + std::to_string(v));
            int b = inst.block_of(v);
            if (seen[static_cast<size_t>(b)])
                fail_input("BlockHitTwice",
                           "two vertices of block " + std::to_string(b) + " selected");
            seen[static_cast<size_t>(b)] = 1;
        }
        return t;
    }

    const std::vector<int>& vertices() const { return v_; }
    size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }

    bool contains(int v) const { return std::binary_search(v_.begin(), v_.end(), v); }

    // Vertex of the given block, or -1 when the block is missed.
    int vertex_in_block(const Instance& inst, int block) const {
        for (int v : v_)
            if (inst.block_of(v) == block) return v;
        return -1;
    }

    friend bool operator==(const Transversal&, const Transversal&) = default;
    friend auto operator<=>(const Transversal& a, const Transversal& b) {
        return a.v_ <=> b.v_;
    }

private:
    std::vector<int> v_;
};

inline std::string to_string(const Transversal& t) {
    std::string s = "{";
    for (size_t i = 0; i < t.vertices().size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t.vertices()[i]);
    }
    return s + "}";
}

inline bool is_independent(const Instance& inst, const std::vector<int>& xs) {
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j)
            if (inst.graph().has_edge(xs[i], xs[j])) return false;
    return true;
}

inline bool is_independent(const Instance& inst, const Transversal& t) {
    return is_independent(inst, t.vertices());
}

inline bool is_full_it(const Instance& inst, const Transversal& t) {
    if (static_cast<int>(t.size()) != inst.num_blocks()) return false;
    std::vector<char> seen(static_cast<size_t>(inst.num_blocks()), 0);
    for (int v : t.vertices()) {
        int b = inst.block_of(v);
        if (seen[static_cast<size_t>(b)]) return false;
        seen[static_cast<size_t>(b)] = 1;
    }
    return is_independent(inst, t);
}

// S + v with v replacing the vertex of its own block. Precondition
// S u {v} independent is checked; the witness neighbour is reported.
inline Transversal oplus(const Instance& inst, const Transversal& s, int v) {
    if (s.contains(v)) return s;
    const int vb = inst.block_of(v);
    std::vector<int> out;
    out.reserve(s.size() + 1);
    for (int u : s.vertices()) {
        if (inst.block_of(u) == vb) continue;
        if (inst.graph().has_edge(u, v))
            throw error(error::category::precondition, "NotIndependent",
                        "vertex " + std::to_string(v) + " is adjacent to " + std::to_string(u));
        out.push_back(u);
    }
    out.push_back(v);
    return Transversal(std::move(out));
}

// Blocks intersecting X (the set U_X), ascending.
inline std::vector<int> closure_blocks(const Instance& inst, const std::vector<int>& xs) {
    std::vector<char> seen(static_cast<size_t>(inst.num_blocks()), 0);
    for (int v : xs) seen[static_cast<size_t>(inst.block_of(v))] = 1;
    std::vector<int> out;
    for (int b = 0; b < inst.num_blocks(); ++b)
        if (seen[static_cast<size_t>(b)]) out.push_back(b);
    return out;
}

// cl(X): the union of all blocks intersecting X, sorted.
inline std::vector<int> closure(const Instance& inst, const std::vector<int>& xs) {
    std::vector<int> out;
    for (int b : closure_blocks(inst, xs))
        out.insert(out.end(), inst.block(b).begin(), inst.block(b).end());
    std::sort(out.begin(), out.end());
    return out;
}

// N_S(v) = N_G(v) n S; the closed variant adds v itself.
inline std::vector<int> neighbourhood_in(const Instance& inst, int v, const Transversal& s,
                                         bool closed) {
    std::vector<int> out;
    for (int u : inst.graph().neighbours(v))
        if (s.contains(u)) out.push_back(u);
    if (closed) {
        out.push_back(v);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
}

inline std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::vector<int> set_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::vector<int> set_difference(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Symmetric difference S ^ T as a sorted vertex set.
inline std::vector<int> sym_diff(const Transversal& s, const Transversal& t) {
    std::vector<int> out;
    std::set_symmetric_difference(s.vertices().begin(), s.vertices().end(),
                                  t.vertices().begin(), t.vertices().end(),
                                  std::back_inserter(out));
    return out;
}

inline Transversal trans_intersection(const Transversal& s, const Transversal& t) {
    return Transversal(set_intersection(s.vertices(), t.vertices()));
}

// Blocks on which two full transversals pick the same vertex.
inline std::vector<int> agreement_blocks(const Instance& inst, const Transversal& s,
                                         const Transversal& t) {
    std::vector<int> out;
    for (int v : set_intersection(s.vertices(), t.vertices()))
        out.push_back(inst.block_of(v));
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {
// Adjacency core without the full-IT validation, for bulk use.
inline bool it_adjacent_unchecked(const Instance& inst, const Transversal& s,
                                  const Transversal& t) {
    std::vector<int> u = set_union(s.vertices(), t.vertices());
    if (static_cast<int>(u.size()) != inst.num_blocks() + 1) return false;
    return is_independent(inst, u);
}
} // namespace detail

// S ~ T iff S u T is independent of size |U|+1: they differ in exactly one
// block and the two differing vertices are non-adjacent.
inline bool it_adjacent(const Instance& inst, const Transversal& s, const Transversal& t) {
    if (!is_full_it(inst, s))
        throw error(error::category::precondition, "NotAnIT", "left argument " + to_string(s));
    if (!is_full_it(inst, t))
        throw error(error::category::precondition, "NotAnIT", "right argument " + to_string(t));
    return detail::it_adjacent_unchecked(inst, s, t);
}

} // namespace itrans

#pragma once

// Feasible tuples (S, C, v): a partial independent transversal S, a forbidden
// set C inside the blocks missed by S, and a vertex sequence v that is
// augmenting for (S, C). The derived chains are
//   B_0 = blocks missed by S,          B_k = B_{k-1} u (blocks of N_S(v_k)),
//   C_0 = C,                           C_k = C_{k-1} u N_S[v_k],
//   d_k = |N_S(v_k)|,
// and v is augmenting iff for every k: (1) v_k lies in V_{B_{k-1}},
// (2) v_k has no neighbour in C_{k-1}, and (3) d_k > 0 unless k is last.
// The empty sequence is augmenting.
//
// Tuples are ordered by larger |S| first, then by lexicographic comparison of
// the degree sequences padded with infinity. Every engine step must strictly
// decrease this order; FeasibleTuple recomputes the chains from scratch and
// checks the counting identities on every construction.

#include "itrans/error.hpp"
#include "itrans/instance.hpp"
#include "itrans/transversal.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace itrans {

struct AugmentCheck {
    bool ok = true;
    int condition = 0; // 1..3, first violated condition; 0 when ok
    size_t index = 0;  // 1-based position of the violating vertex
};

struct TupleKey {
    size_t partial_size = 0;   // |S|
    std::vector<int> degrees;  // d_1..d_m
};

enum class TupleOrder { less, greater, equal, incomparable };

// Lexicographic comparison of infinity-padded degree sequences.
inline int compare_padded(const std::vector<int>& a, const std::vector<int>& b) {
    size_t k = 0;
    while (k < a.size() && k < b.size()) {
        if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
        ++k;
    }
    if (a.size() == b.size()) return 0;
    return a.size() > b.size() ? -1 : 1; // a real degree beats the infinity pad
}

inline TupleOrder compare_keys(const TupleKey& a, const TupleKey& b) {
    if (a.partial_size != b.partial_size)
        return a.partial_size > b.partial_size ? TupleOrder::less : TupleOrder::greater;
    int c = compare_padded(a.degrees, b.degrees);
    if (c < 0) return TupleOrder::less;
    if (c > 0) return TupleOrder::greater;
    return TupleOrder::equal;
}

inline bool key_strictly_less(const TupleKey& a, const TupleKey& b) {
    return compare_keys(a, b) == TupleOrder::less;
}

// Checks conditions (1)-(3) in order, recomputing the chains from scratch.
inline AugmentCheck is_augmenting(const Instance& inst, const Transversal& s,
                                  const std::vector<int>& c, const std::vector<int>& seq) {
    std::vector<char> in_b(static_cast<size_t>(inst.num_blocks()), 0);
    for (int b = 0; b < inst.num_blocks(); ++b)
        if (s.vertex_in_block(inst, b) == -1) in_b[static_cast<size_t>(b)] = 1;
    std::vector<char> in_c(static_cast<size_t>(inst.n()), 0);
    for (int v : c) in_c[static_cast<size_t>(v)] = 1;

    for (size_t k = 0; k < seq.size(); ++k) {
        int v = seq[k];
        if (!in_b[static_cast<size_t>(inst.block_of(v))])
            return {false, 1, k + 1};
        for (int u : inst.graph().neighbours(v))
            if (in_c[static_cast<size_t>(u)]) return {false, 2, k + 1};
        int d = 0;
        for (int u : inst.graph().neighbours(v))
            if (s.contains(u)) ++d;
        if (d == 0 && k + 1 != seq.size()) return {false, 3, k + 1};
        // advance the chains
        in_c[static_cast<size_t>(v)] = 1;
        for (int u : inst.graph().neighbours(v))
            if (s.contains(u)) {
                in_c[static_cast<size_t>(u)] = 1;
                in_b[static_cast<size_t>(inst.block_of(u))] = 1;
            }
    }
    return {};
}

class FeasibleTuple {
public:
    FeasibleTuple(const Instance& inst, Transversal s, std::vector<int> c, std::vector<int> seq)
        : inst_(&inst), s_(std::move(s)), c_(std::move(c)), seq_(std::move(seq)) {
        std::sort(c_.begin(), c_.end());
        validate_shape();
        build_chains();
    }

    const Transversal& partial() const { return s_; }
    const std::vector<int>& forbidden() const { return c_; }
    const std::vector<int>& sequence() const { return seq_; }
    size_t length() const { return seq_.size(); }
    const std::vector<int>& degrees() const { return degrees_; }

    // B_0..B_m as ascending block-index sets.
    const std::vector<std::vector<int>>& block_chain() const { return b_chain_; }
    // C_0..C_m as ascending vertex sets.
    const std::vector<std::vector<int>>& forbidden_chain() const { return c_chain_; }

    const std::vector<int>& blocks_at(size_t k) const { return b_chain_[k]; }
    const std::vector<int>& forbidden_at(size_t k) const { return c_chain_[k]; }

    TupleKey key() const { return {s_.size(), degrees_}; }

private:
    void validate_shape() {
        ITRANS_CHECK(is_independent(*inst_, s_), "partial transversal must be independent");
        std::vector<char> hit(static_cast<size_t>(inst_->num_blocks()), 0);
        for (int v : s_.vertices()) {
            int b = inst_->block_of(v);
            ITRANS_CHECK(!hit[static_cast<size_t>(b)], "partial transversal hits a block twice");
            hit[static_cast<size_t>(b)] = 1;
        }
        for (int v : c_)
            ITRANS_CHECK(!hit[static_cast<size_t>(inst_->block_of(v))],
                         "forbidden set must live in blocks missed by S");
        auto check = is_augmenting(*inst_, s_, c_, seq_);
        ITRANS_CHECK(check.ok, "sequence is not augmenting (condition " +
                                   std::to_string(check.condition) + " at position " +
                                   std::to_string(check.index) + ")");
    }

    void build_chains() {
        std::vector<char> in_b(static_cast<size_t>(inst_->num_blocks()), 0);
        for (int b = 0; b < inst_->num_blocks(); ++b)
            if (s_.vertex_in_block(*inst_, b) == -1) in_b[static_cast<size_t>(b)] = 1;
        std::vector<char> in_c(static_cast<size_t>(inst_->n()), 0);
        for (int v : c_) in_c[static_cast<size_t>(v)] = 1;

        auto snapshot_blocks = [&] {
            std::vector<int> out;
            for (int b = 0; b < inst_->num_blocks(); ++b)
                if (in_b[static_cast<size_t>(b)]) out.push_back(b);
            return out;
        };
        auto snapshot_forbidden = [&] {
            std::vector<int> out;
            for (int v = 0; v < inst_->n(); ++v)
                if (in_c[static_cast<size_t>(v)]) out.push_back(v);
            return out;
        };

        b_chain_.push_back(snapshot_blocks());
        c_chain_.push_back(snapshot_forbidden());
        const size_t missed = b_chain_[0].size();

        int degree_sum = 0;
        for (size_t k = 0; k < seq_.size(); ++k) {
            int v = seq_[k];
            int d = 0;
            in_c[static_cast<size_t>(v)] = 1;
            for (int u : inst_->graph().neighbours(v))
                if (s_.contains(u)) {
                    ++d;
                    in_c[static_cast<size_t>(u)] = 1;
                    in_b[static_cast<size_t>(inst_->block_of(u))] = 1;
                }
            degrees_.push_back(d);
            degree_sum += d;
            b_chain_.push_back(snapshot_blocks());
            c_chain_.push_back(snapshot_forbidden());
            // Counting identities: |C_k| <= |C| + k + sum d_i, and the block
            // chain grows by exactly d_i fresh blocks at each step.
            ITRANS_CHECK(c_chain_.back().size() <=
                             c_.size() + (k + 1) + static_cast<size_t>(degree_sum),
                         "forbidden-set bound violated");
            ITRANS_CHECK(b_chain_.back().size() == missed + static_cast<size_t>(degree_sum),
                         "block-chain equality violated");
        }
    }

    const Instance* inst_;
    Transversal s_;
    std::vector<int> c_;
    std::vector<int> seq_;
    std::vector<int> degrees_;
    std::vector<std::vector<int>> b_chain_;
    std::vector<std::vector<int>> c_chain_;
};

inline TupleOrder compare_tuples(const FeasibleTuple& a, const FeasibleTuple& b) {
    return compare_keys(a.key(), b.key());
}

// Size of the key space {(|S|, degree sequence)}: an upper bound on the
// number of strictly decreasing steps any descent can take. Sequences have
// d_i >= 1 before the last entry and total degree at most |U|.
inline long long descent_key_space_bound(const Instance& inst) {
    const long long cap = 1LL << 56; // saturate: only used as a loop guard
    auto sat_add = [&](long long a, long long b) { return std::min(cap, a + b); };
    auto sat_mul = [&](long long a, long long b) {
        return (a != 0 && b > cap / a) ? cap : a * b;
    };
    const int nb = inst.num_blocks();
    const int dmax = std::max(1, inst.delta());
    // count[s] = number of positive-degree sequences with sum s
    std::vector<long long> count(static_cast<size_t>(nb + 1), 0);
    count[0] = 1;
    for (int s = 1; s <= nb; ++s)
        for (int d = 1; d <= std::min(dmax, s); ++d)
            count[static_cast<size_t>(s)] =
                sat_add(count[static_cast<size_t>(s)], count[static_cast<size_t>(s - d)]);
    long long positive_prefixes = 0;
    for (int s = 0; s <= nb; ++s)
        positive_prefixes = sat_add(positive_prefixes, count[static_cast<size_t>(s)]);
    // a sequence is a positive prefix optionally followed by one 0..dmax entry
    long long sequences = sat_mul(positive_prefixes, 2 + dmax);
    return sat_mul(nb + 1, sequences);
}

} // namespace itrans

#include "itrans/enumerate.hpp"
#include "itrans/generators.hpp"
#include "itrans/swap.hpp"

#include "fixtures.hpp"
#include "oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace itrans;

namespace {

// U = {0..7} with A = {0,1,2,3}, one B-vertex 4 and spares {5,6,7};
// W1,W2,W3 = {8..15},{16..23},{24..31} each holding one B-vertex (8,16,24);
// R = {32..39}. delta = 4, every block of size 8.
Instance figure_like_instance() {
    std::vector<std::pair<int, int>> edges;
    for (int a : {0, 1, 2, 3})
        for (int b : {4, 8, 16, 24}) edges.emplace_back(a, b);
    std::vector<std::vector<int>> blocks;
    for (int s = 0; s < 40; s += 8) {
        std::vector<int> blk;
        for (int i = 0; i < 8; ++i) blk.push_back(s + i);
        blocks.push_back(blk);
    }
    return Instance::validate(Graph::from_edges(40, edges), std::move(blocks));
}

} // namespace

TEST_CASE("swap on the figure-style configuration") {
    Instance inst = figure_like_instance();
    REQUIRE(inst.delta() == 4);
    std::vector<int> k{0, 1, 2, 3, 4, 8, 16, 24};
    SwapContext ctx = swap_instance(inst, k, 0);
    CHECK(ctx.side_a == std::vector<int>{0, 1, 2, 3});
    CHECK(ctx.side_b == std::vector<int>{4, 8, 16, 24});
    CHECK(ctx.target_blocks == std::vector<int>{1, 2, 3});
    CHECK(ctx.remainder_blocks == std::vector<int>{4});
    // greedy Y: one spare per target block, ascending
    CHECK(ctx.y_of[0] == std::vector<int>{5});
    CHECK(ctx.y_of[1] == std::vector<int>{6});
    CHECK(ctx.y_of[2] == std::vector<int>{7});
    CHECK(ctx.child.num_blocks() == 4);
    CHECK(ctx.child.thickness() >= 8);
    // W1' = (W1 minus B) plus Y(W1)
    int w1_child = ctx.parent_to_child_block[1];
    std::set<int> w1_members;
    for (int cv : ctx.child.block(w1_child))
        w1_members.insert(ctx.child_to_parent_vertex[static_cast<size_t>(cv)]);
    CHECK(w1_members == std::set<int>{5, 9, 10, 11, 12, 13, 14, 15});
}

TEST_CASE("figure-style lifts: V'-only and Y-heavy transversals") {
    Instance inst = figure_like_instance();
    SwapContext ctx = swap_instance(inst, {0, 1, 2, 3, 4, 8, 16, 24}, 0);
    auto to_child = [&](std::vector<int> parent_vs) {
        std::vector<int> cs;
        for (int v : parent_vs) cs.push_back(ctx.parent_to_child_vertex[static_cast<size_t>(v)]);
        return Transversal(cs);
    };
    // all slots in W-minus-B / R zones: M(S) = {a u S : a in A}, delta elements
    auto m1 = lift_transversal(ctx, to_child({9, 17, 25, 32}));
    REQUIRE(m1.size() == 4);
    for (const auto& t : m1) CHECK(is_full_it(inst, t));

    // two Y-slots: one y picks the U slot, B n W fills the emptied blocks
    auto m2 = lift_transversal(ctx, to_child({9, 6, 7, 32}));
    REQUIRE(m2.size() == 2);
    std::set<std::vector<int>> got;
    for (const auto& t : m2) got.insert(t.vertices());
    CHECK(got == std::set<std::vector<int>>{{6, 9, 16, 24, 32}, {7, 9, 16, 24, 32}});
}

TEST_CASE("swap with B inside U erases the donor block") {
    Instance inst = Instance::validate(Graph::from_edges(4, {{0, 1}}), {{0, 1}, {2, 3}});
    SwapContext ctx = swap_instance(inst, {0, 1}, 0);
    CHECK(ctx.target_blocks.empty());
    CHECK(ctx.child.num_blocks() == 1);
    CHECK(ctx.child.n() == 2);
}

TEST_CASE("delta-1 swap moves one spare into the target block") {
    Instance inst = Instance::validate(Graph::from_edges(4, {{0, 2}}), {{0, 1}, {2, 3}});
    SwapContext ctx = swap_instance(inst, {0, 2}, 0);
    CHECK(ctx.side_a == std::vector<int>{0});
    CHECK(ctx.side_b == std::vector<int>{2});
    REQUIRE(ctx.y_of.size() == 1);
    CHECK(ctx.y_of[0] == std::vector<int>{1});
    CHECK(ctx.child.num_blocks() == 1);
    CHECK(ctx.child.thickness() == 2);

    // lift both child transversals and walk the crossing edge both ways
    Transversal in_w(std::vector<int>{ctx.parent_to_child_vertex[3]});
    Transversal in_y(std::vector<int>{ctx.parent_to_child_vertex[1]});
    auto m_w = lift_transversal(ctx, in_w);
    auto m_y = lift_transversal(ctx, in_y);
    REQUIRE(m_w.size() == 1);
    CHECK(m_w[0] == Transversal({0, 3}));
    REQUIRE(m_y.size() == 1);
    CHECK(m_y[0] == Transversal({1, 2}));

    auto crossing_in = lift_path(ctx, {in_w, in_y}, m_w[0]);
    CHECK(crossing_in.path.size() <= 3);
    CHECK(crossing_in.path.back() == m_y[0]);
    CHECK(oracle::valid_path(inst, crossing_in.path, m_w[0], m_y[0]));

    auto crossing_out = lift_path(ctx, {in_y, in_w}, m_y[0]);
    CHECK(crossing_out.path.back() == m_w[0]);
    CHECK(oracle::valid_path(inst, crossing_out.path, m_y[0], m_w[0]));
}

TEST_CASE("oversized donor block: the last target absorbs the leftover spares") {
    // U = {0,1,2,3,4,5} holds A = {0} plus five spares; K_{1,1} = {0,6} with
    // B = {6} in W = {6,7,8,9}. delta 1, thickness 4 > 2.
    Instance inst = Instance::validate(Graph::from_edges(10, {{0, 6}}),
                                       {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9}});
    SwapContext ctx = swap_instance(inst, {0, 6}, 0);
    REQUIRE(ctx.y_of.size() == 1);
    CHECK(ctx.y_of[0] == std::vector<int>{1, 2, 3, 4, 5}); // |Y(W)| > |B n W|
    CHECK(ctx.child.num_blocks() == 1);
    CHECK(ctx.child.n() == 8);
    for (const auto& s : enumerate_its(ctx.child))
        for (const auto& t : lift_transversal(ctx, s)) CHECK(is_full_it(inst, t));
}

TEST_CASE("crossing out of Y when the lift's U-slot holds the moved vertex") {
    Instance inst = figure_like_instance();
    SwapContext ctx = swap_instance(inst, {0, 1, 2, 3, 4, 8, 16, 24}, 0);
    auto to_child = [&](std::vector<int> parent_vs) {
        std::vector<int> cs;
        for (int v : parent_vs) cs.push_back(ctx.parent_to_child_vertex[static_cast<size_t>(v)]);
        return Transversal(cs);
    };
    // S1 parks Y-vertices 6 (W2) and 7 (W3); S2 moves 6 back into W2's zone.
    Transversal s1 = to_child({9, 6, 7, 32});
    Transversal s2 = to_child({9, 17, 7, 32});
    auto m1 = lift_transversal(ctx, s1, false);
    // the member whose donor-block slot is exactly vertex 6
    Transversal start;
    for (const auto& t : m1)
        if (t.contains(6)) start = t;
    REQUIRE(start.size() == 5);
    auto lifted = lift_path(ctx, {s1, s2}, start);
    CHECK(oracle::valid_path(inst, lifted.path, start, lifted.path.back()));
    auto m2 = lift_transversal(ctx, s2, false);
    CHECK(std::binary_search(m2.begin(), m2.end(), lifted.path.back()));
}

TEST_CASE("swap rejections") {
    Instance inst = fixtures::two_disjoint_edges();
    CHECK_THROWS_MATCHES(swap_instance(inst, {0, 1, 2, 3}, 0), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == "NotAComponent"; }));
    // K_{2,2} whose sides straddle the two blocks: no side fits a donor block
    Instance split = Instance::validate(
        Graph::from_edges(8, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}), {{0, 2, 4, 5}, {1, 3, 6, 7}});
    CHECK_THROWS_MATCHES(swap_instance(split, {0, 1, 2, 3}, 0), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == "SideNotInBlock"; }));
}

TEST_CASE("lift_transversal validates its input") {
    Instance inst = Instance::validate(Graph::from_edges(4, {{0, 2}}), {{0, 1}, {2, 3}});
    SwapContext ctx = swap_instance(inst, {0, 2}, 0);
    CHECK_THROWS_MATCHES(lift_transversal(ctx, Transversal()), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == "NotAnIT"; }));
}

TEST_CASE("every element of M is an IT and members are pairwise reconfigurable") {
    for (int delta : {1, 2}) {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            fixtures::SwapFixture fx = fixtures::make_swap_fixture(delta, seed);
            SwapContext ctx = swap_instance(fx.instance, fx.component, fx.donor_block);
            auto its = enumerate_its(ctx.child);
            for (const auto& s : its) {
                auto m = lift_transversal(ctx, s); // checks ITs + pairwise paths
                CHECK_FALSE(m.empty());
                for (const auto& t : m) CHECK(oracle::independent(fx.instance, t.vertices()));
            }
        }
    }
}

TEST_CASE("lifted paths validate edge by edge against the oracle") {
    for (int delta : {1, 2}) {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            fixtures::SwapFixture fx = fixtures::make_swap_fixture(delta, seed);
            SwapContext ctx = swap_instance(fx.instance, fx.component, fx.donor_block);
            auto rg = build_reconfig_graph(ctx.child);
            auto comps = rg_components(rg);
            for (const auto& comp : comps) {
                if (comp.size() < 2) continue;
                auto p = rg_path(rg, comp.front(), comp.back());
                REQUIRE(p.has_value());
                std::vector<Transversal> child_path;
                for (int i : *p) child_path.push_back(rg.its[static_cast<size_t>(i)]);
                auto m0 = lift_transversal(ctx, child_path.front(), false);
                LiftResult lifted = lift_path(ctx, child_path, m0.front());
                CHECK(oracle::valid_path(fx.instance, lifted.path, m0.front(),
                                         lifted.path.back()));
                auto m_last = lift_transversal(ctx, child_path.back(), false);
                CHECK(std::binary_search(m_last.begin(), m_last.end(), lifted.path.back()));
            }
        }
    }
}

TEST_CASE("lift_path zero-length stays within M") {
    Instance inst = Instance::validate(Graph::from_edges(4, {{0, 2}}), {{0, 1}, {2, 3}});
    SwapContext ctx = swap_instance(inst, {0, 2}, 0);
    Transversal child_it(std::vector<int>{ctx.parent_to_child_vertex[3]});
    auto m = lift_transversal(ctx, child_it);
    auto lifted = lift_path(ctx, {child_it}, m.front());
    CHECK(lifted.path == std::vector<Transversal>{m.front()});
    // requesting a specific member is an intra-M walk
    auto walk = reach_within_m(ctx, child_it, m.front(), m.back());
    CHECK(walk.front() == m.front());
    CHECK(walk.back() == m.back());
}

TEST_CASE("lift_path rejects non-adjacent child steps") {
    Instance inst = figure_like_instance();
    SwapContext ctx = swap_instance(inst, {0, 1, 2, 3, 4, 8, 16, 24}, 0);
    auto to_child = [&](std::vector<int> parent_vs) {
        std::vector<int> cs;
        for (int v : parent_vs) cs.push_back(ctx.parent_to_child_vertex[static_cast<size_t>(v)]);
        return Transversal(cs);
    };
    Transversal s1 = to_child({9, 17, 25, 32});
    Transversal s2 = to_child({10, 18, 25, 32}); // two blocks changed
    auto m = lift_transversal(ctx, s1, false);
    CHECK_THROWS_MATCHES(lift_path(ctx, {s1, s2}, m.front()), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == "NotAdjacent"; }));
}

// Acceptance suite: seven property-based criteria at desk scale
// (delta in {1,2,3}, at most 5 blocks, block size at most 8), each checked
// against test-side brute-force oracles and printed as one pass/fail line.

#include "itrans/itrans.hpp"

#include "fixtures.hpp"
#include "oracle.hpp"

#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace itrans;

namespace {

struct Criterion {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        pass = false;
        if (detail.empty()) detail = why;
    }
};

bool oracle_is_full_it(const Instance& inst, const Transversal& t) {
    if (static_cast<int>(t.size()) != inst.num_blocks()) return false;
    std::vector<int> per_block(static_cast<size_t>(inst.num_blocks()), 0);
    for (int v : t.vertices()) ++per_block[static_cast<size_t>(inst.block_of(v))];
    for (int c : per_block)
        if (c != 1) return false;
    return oracle::independent(inst, t.vertices());
}

// ---- corpus construction --------------------------------------------------

// All graphs on n vertices with maximum degree <= 1 (matchings), by
// recursion over the edge list of K_n.
void all_matchings(int n, std::vector<std::vector<std::pair<int, int>>>& out) {
    std::vector<std::pair<int, int>> all_edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all_edges.emplace_back(u, v);
    std::vector<char> used(static_cast<size_t>(n), 0);
    std::vector<std::pair<int, int>> current;
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == all_edges.size()) {
            out.push_back(current);
            return;
        }
        self(self, i + 1);
        auto [u, v] = all_edges[i];
        if (!used[static_cast<size_t>(u)] && !used[static_cast<size_t>(v)]) {
            used[static_cast<size_t>(u)] = used[static_cast<size_t>(v)] = 1;
            current.push_back(all_edges[i]);
            self(self, i + 1);
            current.pop_back();
            used[static_cast<size_t>(u)] = used[static_cast<size_t>(v)] = 0;
        }
    };
    rec(rec, 0);
}

// All graphs on n vertices with max degree <= dmax, by edge-subset
// enumeration (n <= 6).
void all_bounded_graphs(int n, int dmax,
                        std::vector<std::vector<std::pair<int, int>>>& out) {
    std::vector<std::pair<int, int>> all_edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all_edges.emplace_back(u, v);
    for (unsigned mask = 0; mask < (1u << all_edges.size()); ++mask) {
        std::vector<int> deg(static_cast<size_t>(n), 0);
        std::vector<std::pair<int, int>> edges;
        bool ok = true;
        for (size_t i = 0; i < all_edges.size() && ok; ++i)
            if (mask & (1u << i)) {
                auto [u, v] = all_edges[i];
                if (++deg[static_cast<size_t>(u)] > dmax || ++deg[static_cast<size_t>(v)] > dmax)
                    ok = false;
                edges.push_back(all_edges[i]);
            }
        if (ok) out.push_back(std::move(edges));
    }
}

std::vector<std::vector<int>> contiguous_blocks(const std::vector<int>& sizes) {
    std::vector<std::vector<int>> blocks;
    int next = 0;
    for (int s : sizes) {
        std::vector<int> b;
        for (int i = 0; i < s; ++i) b.push_back(next++);
        blocks.push_back(std::move(b));
    }
    return blocks;
}

// Exhaustive families of valid (2*delta-thick) instances on tiny blocks.
std::vector<Instance> exhaustive_small_corpus() {
    std::vector<Instance> out;
    auto add_family = [&](const std::vector<int>& sizes, int dmax, bool matchings_only) {
        int n = 0;
        for (int s : sizes) n += s;
        std::vector<std::vector<std::pair<int, int>>> graphs;
        if (matchings_only)
            all_matchings(n, graphs);
        else
            all_bounded_graphs(n, dmax, graphs);
        for (auto& edges : graphs) {
            Instance inst =
                Instance::validate(Graph::from_edges(n, edges), contiguous_blocks(sizes));
            if (inst.haxell_thick()) out.push_back(std::move(inst));
        }
    };
    add_family({2, 2}, 1, true);
    add_family({2, 2, 2}, 1, true);
    add_family({2, 2, 2, 2}, 1, true);
    add_family({3, 3}, 1, true);
    add_family({4}, 2, false);
    add_family({5}, 2, false);
    add_family({6}, 3, false);
    return out;
}

// Random 2*delta-thick irreducible instances that are not K_dd unions.
std::vector<Instance> random_connectivity_corpus(size_t want) {
    std::vector<Instance> out;
    std::uint64_t seed = 0;
    while (out.size() < want && seed < 100000) {
        int delta = 1 + static_cast<int>(seed % 3);
        int blocks = 2 + static_cast<int>((seed / 3) % 4);
        if (delta == 3 && blocks > 3) blocks = 3; // keep enumeration desk-scale
        Instance inst = gen_random_instance(delta, blocks, 2 * delta, seed);
        ++seed;
        if (!is_irreducible(inst) || is_disjoint_kdd_union(inst) || inst.delta() < 1) continue;
        out.push_back(std::move(inst));
    }
    return out;
}

// ---- criteria -------------------------------------------------------------

Criterion criterion1_haxell() {
    Criterion c;
    int runs = 0;
    for (std::uint64_t seed = 0; runs < 500; ++seed) {
        int delta = 1 + static_cast<int>(seed % 3);
        int blocks = 2 + static_cast<int>(seed % 4);
        int thickness = 2 * delta + static_cast<int>((seed / 7) % 2);
        if (thickness > 8) thickness = 2 * delta;
        Instance inst;
        try {
            inst = gen_random_instance(delta, blocks, thickness, seed);
        } catch (const error&) {
            continue;
        }
        if (!inst.haxell_thick()) continue;
        ++runs;
        try {
            FindItResult res = find_it(inst);
            if (!oracle_is_full_it(inst, res.transversal))
                c.fail("non-IT result at seed " + std::to_string(seed));
            for (size_t i = 1; i < res.trace.size(); ++i)
                if (compare_keys(res.trace[i].key, res.trace[i - 1].key) != TupleOrder::less)
                    c.fail("non-decreasing step at seed " + std::to_string(seed));
        } catch (const error& e) {
            c.fail(std::string("descent failed: ") + e.what());
        }
    }
    if (c.pass) c.detail = std::to_string(runs) + " instances, all descents valid";
    return c;
}

Criterion criterion2_connectivity() {
    Criterion c;
    int exhaustive_checked = 0, random_checked = 0, thick_checked = 0;
    for (const Instance& inst : exhaustive_small_corpus()) {
        if (!is_irreducible(inst) || is_disjoint_kdd_union(inst) || inst.delta() < 1) continue;
        ++exhaustive_checked;
        if (oracle::num_components(oracle::state_space(inst)) != 1)
            c.fail("disconnected exhaustive instance (n=" + std::to_string(inst.n()) + ")");
    }
    for (const Instance& inst : random_connectivity_corpus(200)) {
        ++random_checked;
        if (oracle::num_components(oracle::state_space(inst)) != 1)
            c.fail("disconnected random instance");
    }
    for (std::uint64_t seed = 0; thick_checked < 60; ++seed) {
        int delta = 1 + static_cast<int>(seed % 2);
        Instance inst = gen_random_instance(delta, 3, 2 * delta + 1, seed);
        if (inst.delta() < 1) continue;
        for (const auto& comp : irreducible_components(inst)) {
            if (comp.instance.delta() < 1) continue;
            ++thick_checked;
            if (oracle::num_components(oracle::state_space(comp.instance)) != 1)
                c.fail("disconnected (2*delta+1)-thick component");
        }
    }
    if (c.pass)
        c.detail = std::to_string(exhaustive_checked) + " exhaustive + " +
                   std::to_string(random_checked) + " random + " +
                   std::to_string(thick_checked) + " thick components, all connected";
    return c;
}

Criterion criterion3_extremal_boundary() {
    Criterion c;
    for (int delta : {1, 2, 3}) {
        Instance inst = gen_disjoint_kdd(delta, 1, 0);
        auto sp = oracle::state_space(inst);
        if (sp.its.size() != static_cast<size_t>(2 * delta))
            c.fail("K_dd block IT count != 2*delta at delta " + std::to_string(delta));
        auto ids = oracle::component_ids(sp);
        std::set<int> comps(ids.begin(), ids.end());
        if (comps.size() != 2) c.fail("K_dd block must split into two components");
        for (int comp : comps) {
            int size = 0;
            for (int id : ids)
                if (id == comp) ++size;
            if (size != delta) c.fail("component size != delta");
        }
    }
    for (int delta : {1, 2, 3}) {
        for (int m : {1, 2, 3}) {
            std::vector<int> sigma(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) sigma[static_cast<size_t>(i)] = (i + 1) % m;
            auto pair = gen_extremal_pair(delta, m, sigma);
            if (delta * m <= 6) {
                auto sp = oracle::state_space(pair.instance);
                if (oracle::same_component(sp, pair.s, pair.t))
                    c.fail("extremal pair connected at delta " + std::to_string(delta));
            }
            try {
                auto cert = extremal_certificate(pair.instance, pair.s, pair.t);
                if (cert.sigma != sigma) c.fail("certificate sigma mismatch");
            } catch (const error& e) {
                c.fail(std::string("certificate failed: ") + e.what());
            }
        }
    }
    if (c.pass) c.detail = "2*delta singletons in two delta-cliques; planted sigma recovered";
    return c;
}

Criterion criterion4_constructive(const std::vector<Instance>& corpus) {
    Criterion c;
    long long pairs = 0;
    for (const Instance& inst : corpus) {
        if (!is_irreducible(inst) || !inst.haxell_thick() || inst.delta() < 1) continue;
        auto sp = oracle::state_space(inst);
        auto ids = oracle::component_ids(sp);
        const size_t n = sp.its.size();
        if (n == 0) continue;
        std::mt19937_64 rng(4242);
        auto run_pair = [&](size_t i, size_t j) {
            ++pairs;
            auto out = constructive_reconfigure(inst, sp.its[i], sp.its[j]);
            bool connected = ids[i] == ids[j];
            if (connected) {
                if (!out.path || !oracle::valid_path(inst, *out.path, sp.its[i], sp.its[j]))
                    c.fail("connected pair without a valid path");
            } else {
                if (!out.obstruction || !is_disjoint_kdd_union(inst))
                    c.fail("disconnected pair without an obstruction on a K_dd union");
            }
        };
        if (n * n <= 144) {
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) run_pair(i, j);
        } else {
            for (int rep = 0; rep < 144; ++rep)
                run_pair(static_cast<size_t>(uniform_below(rng, n)),
                         static_cast<size_t>(uniform_below(rng, n)));
        }
    }
    if (c.pass) c.detail = std::to_string(pairs) + " pairs, exact oracle agreement";
    return c;
}

Criterion criterion5_swap_lift() {
    Criterion c;
    long long contexts = 0, lifts = 0;
    for (int delta : {1, 2, 3}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto fx = fixtures::make_swap_fixture(delta, seed);
            SwapContext ctx;
            try {
                ctx = swap_instance(fx.instance, fx.component, fx.donor_block);
            } catch (const error& e) {
                c.fail(std::string("swap failed: ") + e.what());
                continue;
            }
            ++contexts;
            std::vector<Transversal> its;
            try {
                its = enumerate_its(ctx.child, 20000);
            } catch (const error&) {
                continue;
            }
            for (const auto& s : its) {
                std::vector<Transversal> m;
                try {
                    m = lift_transversal(ctx, s); // asserts ITs + pairwise reconfigurable
                } catch (const error& e) {
                    c.fail(std::string("lift_transversal: ") + e.what());
                    continue;
                }
                for (const auto& t : m)
                    if (!oracle_is_full_it(fx.instance, t)) c.fail("M(S) element is not an IT");
            }
            // lift every BFS path between component extremes
            auto sp = oracle::state_space(ctx.child);
            auto ids = oracle::component_ids(sp);
            std::set<int> comps(ids.begin(), ids.end());
            for (int comp : comps) {
                int first = -1, last = -1;
                for (size_t i = 0; i < sp.its.size(); ++i)
                    if (ids[i] == comp) {
                        if (first == -1) first = static_cast<int>(i);
                        last = static_cast<int>(i);
                    }
                if (first == last) continue;
                auto child_path = oracle::shortest_path(sp, sp.its[static_cast<size_t>(first)],
                                                        sp.its[static_cast<size_t>(last)]);
                if (!child_path) continue;
                auto m0 = lift_transversal(ctx, child_path->front(), false);
                try {
                    LiftResult lifted = lift_path(ctx, *child_path, m0.front());
                    ++lifts;
                    if (!oracle::valid_path(fx.instance, lifted.path, m0.front(),
                                            lifted.path.back()))
                        c.fail("lifted path failed the independent validator");
                } catch (const error& e) {
                    c.fail(std::string("lift_path: ") + e.what());
                }
            }
        }
    }
    if (c.pass)
        c.detail = std::to_string(contexts) + " contexts, " + std::to_string(lifts) +
                   " lifted paths, zero failures";
    return c;
}

Criterion criterion6_mcmc() {
    Criterion c;
    Instance edge12 = fixtures::edge12();
    auto sp = oracle::state_space(edge12);
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        long long bad_moves = 0;
        ChainReport rep = run_chain(edge12, 100000, seed,
                                    [&](const Transversal& a, const Transversal& b) {
                                        if (!oracle::adjacent(edge12, a, b)) ++bad_moves;
                                    });
        if (bad_moves != 0) c.fail("accepted move off the reconfigurability graph");
        if (rep.visits.size() != 3) c.fail("chain did not visit all three ITs");
        std::vector<double> emp, ref;
        double total = static_cast<double>(100000 + 1);
        for (const auto& it : sp.its) {
            auto found = rep.visits.find(it);
            emp.push_back(found == rep.visits.end()
                              ? 0.0
                              : static_cast<double>(found->second) / total);
            ref.push_back(1.0 / 3.0);
        }
        double tv = tv_distance(emp, ref);
        if (tv >= 0.05)
            c.fail("TV distance " + std::to_string(tv) + " >= 0.05 at seed " +
                   std::to_string(seed));
    }
    Instance k22 = fixtures::k22_one_block();
    ChainReport rep = run_chain(k22, 50000, 9);
    for (const auto& [t, count] : rep.visits)
        if (t.contains(2) || t.contains(3)) c.fail("chain crossed the K_{2,2} cut");
    if (c.pass) c.detail = "TV < 0.05 on 3 seeds; cut never crossed; moves are edges";
    return c;
}

Criterion criterion7_conjecture(const std::vector<Instance>& corpus) {
    Criterion c; // reporting criterion: flags are reported, not failed on
    long long scanned = 0, flags = 0;
    long long min_count = -1;
    for (const Instance& inst : corpus) {
        if (!inst.haxell_thick() || inst.delta() < 1) continue;
        auto its = oracle::brute_its(inst);
        ++scanned;
        long long bound = 2;
        for (int b = 0; b < inst.num_blocks(); ++b) bound *= inst.delta();
        if (min_count < 0 || static_cast<long long>(its.size()) < min_count)
            min_count = static_cast<long long>(its.size());
        if (static_cast<long long>(its.size()) < bound) {
            ++flags;
            std::printf("  conjecture flag: it_count=%zu < bound=%lld (n=%d)\n", its.size(),
                        bound, inst.n());
        }
    }
    c.detail = std::to_string(scanned) + " instances scanned, " + std::to_string(flags) +
               " below 2*delta^blocks (expected 0), min IT count " + std::to_string(min_count);
    return c;
}

} // namespace

int main() {
    std::vector<Instance> corpus = exhaustive_small_corpus();
    for (Instance& inst : random_connectivity_corpus(80)) corpus.push_back(std::move(inst));
    for (int delta : {1, 2}) {
        for (int m : {1, 2}) {
            for (std::uint64_t p : {0ull, 1ull, 5ull}) corpus.push_back(gen_disjoint_kdd(delta, m, p));
            std::vector<int> sigma(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) sigma[static_cast<size_t>(i)] = (i + 1) % m;
            corpus.push_back(gen_extremal_pair(delta, m, sigma).instance);
        }
    }

    struct Entry {
        const char* name;
        std::function<Criterion()> run;
    };
    std::vector<Entry> entries = {
        {"1 haxell existence (descent always finds a valid IT, strictly decreasing)",
         [] { return criterion1_haxell(); }},
        {"2 theorem-2 connectivity (irreducible thick non-extremal => one component)",
         [] { return criterion2_connectivity(); }},
        {"3 extremal boundary (single K_dd split; extremal pairs stuck; sigma recovered)",
         [] { return criterion3_extremal_boundary(); }},
        {"4 constructive soundness (path <=> same component; validator-clean paths)",
         [&] { return criterion4_constructive(corpus); }},
        {"5 swap/lift correctness (M(S) valid and pairwise reconfigurable; lifted paths)",
         [] { return criterion5_swap_lift(); }},
        {"6 mcmc uniformity/ergodicity (TV < 0.05; cut never crossed; moves are edges)",
         [] { return criterion6_mcmc(); }},
        {"7 conjecture scan (report IT counts against 2*delta^blocks)",
         [&] { return criterion7_conjecture(corpus); }},
    };

    int failures = 0;
    for (const auto& entry : entries) {
        Criterion c;
        try {
            c = entry.run();
        } catch (const error& e) {
            c.pass = false;
            c.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %s: %s\n", c.pass ? "PASS" : "FAIL", entry.name,
                    c.detail.c_str());
        if (!c.pass) ++failures;
    }
    return failures;
}

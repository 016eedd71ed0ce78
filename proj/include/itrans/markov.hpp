#pragma once

// Spin-system view and the Markov chain over admissible configurations:
// sample a vertex (u,i) uniformly; if it conflicts with the current
// configuration, do nothing, otherwise it replaces u's current spin. The
// proposal is symmetric, so the empirical distribution on the visited
// component converges to uniform. RNG is mt19937_64, one stream per chain,
// with rejection sampling for unbiased bounded draws (reproducible across
// platforms for a fixed seed).

#include "itrans/error.hpp"
#include "itrans/haxell.hpp"
#include "itrans/instance.hpp"
#include "itrans/transversal.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace itrans {

struct SpinSystem {
    int particles = 0;
    int spins = 0; // t
    // conflicts between (u,i) and (v,j), u != v
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> conflicts;
};

// Vertices are particle*t + spin; blocks are one per particle.
inline Instance spin_to_instance(const SpinSystem& sys) {
    if (sys.particles < 1 || sys.spins < 1)
        fail_input("BadSpinSystem", "need at least one particle and one spin");
    const int n = sys.particles * sys.spins;
    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : sys.conflicts) {
        auto [u, i] = a;
        auto [v, j] = b;
        if (u < 0 || u >= sys.particles || v < 0 || v >= sys.particles || i < 0 ||
            i >= sys.spins || j < 0 || j >= sys.spins)
            fail_input("BadSpinSystem", "conflict endpoint out of range");
        if (u == v)
            fail_input("SelfBlockConflict", "conflict between spins of particle " +
                                                std::to_string(u));
        edges.emplace_back(u * sys.spins + i, v * sys.spins + j);
    }
    std::vector<std::vector<int>> blocks;
    for (int u = 0; u < sys.particles; ++u) {
        std::vector<int> b;
        for (int i = 0; i < sys.spins; ++i) b.push_back(u * sys.spins + i);
        blocks.push_back(std::move(b));
    }
    return Instance::validate(Graph::from_edges(n, edges), std::move(blocks));
}

struct ChainState {
    Transversal config;
    std::uint64_t step = 0;
    std::uint64_t seed = 0;
    std::mt19937_64 rng;
};

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

// Core acceptance rule; returns whether the configuration changed.
inline bool apply_proposal(const Instance& inst, Transversal& config, int v) {
    for (int u : inst.graph().neighbours(v))
        if (config.contains(u)) return false; // adjacent: skip to the next iteration
    Transversal next = oplus(inst, config, v);
    bool changed = !(next == config);
    config = std::move(next);
    return changed;
}

inline ChainState chain_init(const Instance& inst, std::uint64_t seed) {
    ChainState state;
    state.seed = seed;
    state.rng.seed(seed);
    try {
        state.config = find_it(inst).transversal;
    } catch (const error& e) {
        throw error(error::category::precondition, "NoInitialState",
                    std::string("find_it failed: ") + e.what());
    }
    return state;
}

inline void mcmc_step(const Instance& inst, ChainState& state) {
    int v = static_cast<int>(uniform_below(state.rng, static_cast<std::uint64_t>(inst.n())));
    apply_proposal(inst, state.config, v);
    ++state.step;
}

struct ChainReport {
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
    std::string generator = "mt19937_64";
    std::uint64_t accepted = 0; // proposals that changed the configuration
    std::map<Transversal, std::uint64_t> visits;
    Transversal initial, final_config;
};

// Deterministic given the seed. The observer, when set, sees every accepted
// configuration change; run_chain itself checks each change is a
// reconfigurability-graph edge.
inline ChainReport run_chain(
    const Instance& inst, std::uint64_t steps, std::uint64_t seed,
    const std::function<void(const Transversal&, const Transversal&)>& observer = {}) {
    ChainState state = chain_init(inst, seed);
    ChainReport report;
    report.steps = steps;
    report.seed = seed;
    report.initial = state.config;
    ++report.visits[state.config];
    if (inst.n() == 0) { // nothing to sample
        report.final_config = state.config;
        return report;
    }
    for (std::uint64_t i = 0; i < steps; ++i) {
        Transversal before = state.config;
        mcmc_step(inst, state);
        if (!(state.config == before)) {
            ++report.accepted;
            ITRANS_CHECK(detail::it_adjacent_unchecked(inst, before, state.config),
                         "accepted chain move is not a reconfigurability edge");
            if (observer) observer(before, state.config);
        }
        ++report.visits[state.config];
    }
    report.final_config = state.config;
    return report;
}

// Total variation distance 0.5 * sum |p - q| over a shared support universe.
inline double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size())
        fail_input("SupportMismatch", "tv_distance needs equal-length distributions");
    double acc = 0;
    for (size_t i = 0; i < p.size(); ++i) acc += p[i] > q[i] ? p[i] - q[i] : q[i] - p[i];
    return acc / 2;
}

} // namespace itrans

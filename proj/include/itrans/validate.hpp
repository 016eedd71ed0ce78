#pragma once

// Standalone validation of reconfiguration paths, written against the raw
// definitions (block counts and pairwise edge scans) rather than the helpers
// the path producers use. The CLI refuses to print a path this validator
// rejects.

#include "itrans/instance.hpp"
#include "itrans/transversal.hpp"

#include <string>
#include <vector>

namespace itrans {

struct PathCheck {
    bool ok = true;
    size_t index = 0;
    std::string reason;
};

inline PathCheck validate_reconfiguration_path(const Instance& inst,
                                               const std::vector<Transversal>& path,
                                               const Transversal& expect_start,
                                               const Transversal& expect_end) {
    auto fail = [](size_t i, std::string why) { return PathCheck{false, i, std::move(why)}; };
    if (path.empty()) return fail(0, "empty path");
    if (!(path.front() == expect_start)) return fail(0, "wrong start");
    if (!(path.back() == expect_end)) return fail(path.size() - 1, "wrong end");

    for (size_t i = 0; i < path.size(); ++i) {
        const auto& vs = path[i].vertices();
        std::vector<int> per_block(static_cast<size_t>(inst.num_blocks()), 0);
        for (int v : vs) {
            if (v < 0 || v >= inst.n()) return fail(i, "vertex out of range");
            ++per_block[static_cast<size_t>(inst.block_of(v))];
        }
        for (int b = 0; b < inst.num_blocks(); ++b)
            if (per_block[static_cast<size_t>(b)] != 1)
                return fail(i, "block " + std::to_string(b) + " not hit exactly once");
        for (size_t a = 0; a < vs.size(); ++a)
            for (size_t c = a + 1; c < vs.size(); ++c)
                if (inst.graph().has_edge(vs[a], vs[c]))
                    return fail(i, "edge inside transversal: " + std::to_string(vs[a]) + "-" +
                                       std::to_string(vs[c]));
    }
    for (size_t i = 1; i < path.size(); ++i) {
        std::vector<int> u = set_union(path[i - 1].vertices(), path[i].vertices());
        if (static_cast<int>(u.size()) != inst.num_blocks() + 1)
            return fail(i, "consecutive transversals do not differ in exactly one block");
        for (size_t a = 0; a < u.size(); ++a)
            for (size_t c = a + 1; c < u.size(); ++c)
                if (inst.graph().has_edge(u[a], u[c]))
                    return fail(i, "union of consecutive transversals is not independent");
    }
    return {};
}

} // namespace itrans

// Batch front end: solve instances, analyze their reconfigurability graphs,
// run the constructive reconfiguration engine, drive Markov chains, and run
// corpus experiments. Instances come from JSON files or generator specs
// (gen:kdd:..., gen:random:..., gen:extremal:...). All reports are JSON on
// stdout and deterministic given inputs and seeds.
//
// Exit codes: 0 success, 1 input error, 2 precondition violation,
// 3 internal assertion (certificate failure).

#include "itrans/itrans.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace itrans;

namespace {

long long enumeration_cap() {
    if (const char* env = std::getenv("ITRANS_CAP")) {
        try {
            long long cap = std::stoll(env);
            if (cap > 0) return cap;
        } catch (...) {
            fail_input("BadCap", "ITRANS_CAP must be a positive integer");
        }
    }
    return kDefaultEnumerationCap;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        fail_input("BadGeneratorSpec", what + ": not an integer: " + s);
    }
}

// gen:kdd:<delta>:<m>:<trivial|lemma3|seedN>
// gen:random:<delta>:<blocks>:<thickness>:seed<N>
// gen:extremal:<delta>:<m>:shift<N>
Instance instance_from_spec(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.size() < 2 || parts[0] != "gen")
        fail_input("BadGeneratorSpec", "expected gen:<kind>:..., got " + spec);
    const std::string& kind = parts[1];
    auto seed_of = [&](const std::string& s, const std::string& prefix) -> std::uint64_t {
        if (s.rfind(prefix, 0) != 0)
            fail_input("BadGeneratorSpec", "expected " + prefix + "N, got " + s);
        return static_cast<std::uint64_t>(
            parse_int(s.substr(prefix.size()), "seed"));
    };
    if (kind == "kdd") {
        if (parts.size() != 5) fail_input("BadGeneratorSpec", "gen:kdd:<delta>:<m>:<placement>");
        std::uint64_t placement;
        if (parts[4] == "trivial")
            placement = 0;
        else if (parts[4] == "lemma3")
            placement = 1;
        else
            placement = seed_of(parts[4], "seed");
        return gen_disjoint_kdd(parse_int(parts[2], "delta"), parse_int(parts[3], "m"),
                                placement);
    }
    if (kind == "random") {
        if (parts.size() != 6)
            fail_input("BadGeneratorSpec", "gen:random:<delta>:<blocks>:<thickness>:seedN");
        return gen_random_instance(parse_int(parts[2], "delta"), parse_int(parts[3], "blocks"),
                                   parse_int(parts[4], "thickness"), seed_of(parts[5], "seed"));
    }
    if (kind == "extremal") {
        if (parts.size() != 5) fail_input("BadGeneratorSpec", "gen:extremal:<delta>:<m>:shiftN");
        int m = parse_int(parts[3], "m");
        int shift = static_cast<int>(seed_of(parts[4], "shift")) % std::max(1, m);
        std::vector<int> sigma(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) sigma[static_cast<size_t>(i)] = (i + shift) % m;
        return gen_extremal_pair(parse_int(parts[2], "delta"), m, sigma).instance;
    }
    fail_input("BadGeneratorSpec", "unknown generator kind: " + kind);
}

Instance load_instance(const std::string& arg) {
    if (arg.rfind("gen:", 0) == 0) return instance_from_spec(arg);
    std::ifstream in(arg);
    if (!in) fail_input("FileNotFound", arg);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail_input("SchemaError", std::string("invalid JSON in ") + arg + ": " + e.what());
    }
    return instance_from_json(j);
}

json instance_summary(const Instance& inst) {
    json j;
    j["n"] = inst.n();
    j["blocks"] = inst.num_blocks();
    j["delta"] = inst.delta();
    j["thickness"] = inst.thickness();
    j["haxell_thick"] = inst.haxell_thick();
    return j;
}

json key_to_json(const TupleKey& key) {
    json j;
    j["partial"] = key.partial_size;
    j["degrees"] = key.degrees;
    return j;
}

json certificate_to_json(const ExtremalCertificate& cert) {
    json j;
    j["blocks"] = cert.blocks;
    j["sigma"] = cert.sigma;
    json sides = json::array();
    for (const auto& [r, b] : cert.sides) sides.push_back(json::array({r, b}));
    j["sides"] = std::move(sides);
    return j;
}

json visits_to_json(const std::map<Transversal, std::uint64_t>& visits) {
    json arr = json::array();
    for (const auto& [t, c] : visits) {
        json rec;
        rec["transversal"] = transversal_to_json(t);
        rec["count"] = c;
        arr.push_back(std::move(rec));
    }
    return arr;
}

int run_solve(const std::string& instance_arg, const std::string& trace_file) {
    Instance inst = load_instance(instance_arg);
    FindItResult res = find_it(inst);
    if (!trace_file.empty()) {
        std::ofstream out(trace_file);
        if (!out) fail_input("FileNotFound", "cannot write " + trace_file);
        for (const auto& step : res.trace) {
            json rec;
            rec["move"] = step.move;
            rec["vertex"] = step.vertex;
            rec["key"] = key_to_json(step.key);
            out << rec.dump() << "\n";
        }
    }
    json out;
    out["instance"] = instance_summary(inst);
    out["transversal"] = transversal_to_json(res.transversal);
    out["guaranteed"] = res.guaranteed;
    out["steps"] = res.trace.size();
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_analyze(const std::string& instance_arg, bool do_enumerate, bool do_connectivity,
                bool do_diameter, bool do_kdd) {
    if (!do_enumerate && !do_connectivity && !do_diameter && !do_kdd)
        do_enumerate = do_connectivity = do_diameter = do_kdd = true;
    Instance inst = load_instance(instance_arg);
    json out;
    out["instance"] = instance_summary(inst);
    out["irreducible_components"] = irreducible_components(inst).size();
    if (do_kdd) out["kdd_union"] = is_disjoint_kdd_union(inst);
    if (do_enumerate && !do_connectivity && !do_diameter) {
        out["it_count"] = enumerate_its(inst, enumeration_cap()).size();
    } else if (do_enumerate || do_connectivity || do_diameter) {
        ReconfigGraph rg = build_reconfig_graph(inst, enumeration_cap());
        if (do_enumerate) out["it_count"] = rg.its.size();
        if (do_connectivity) {
            auto comps = rg_components(rg);
            out["components"] = comps.size();
            json sizes = json::array();
            for (const auto& c : comps) sizes.push_back(c.size());
            out["component_sizes"] = std::move(sizes);
        }
        if (do_diameter) out["diameter"] = rg_diameters(rg);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_reconfigure(const std::string& instance_arg, const std::string& from_str,
                    const std::string& to_str) {
    Instance inst = load_instance(instance_arg);
    json jf, jt;
    try {
        jf = json::parse(from_str);
        jt = json::parse(to_str);
    } catch (const std::exception& e) {
        fail_input("SchemaError", std::string("transversal arguments must be JSON arrays: ") +
                                      e.what());
    }
    Transversal from = transversal_from_json(inst, jf);
    Transversal to = transversal_from_json(inst, jt);

    ReconfigureOutcome res = constructive_reconfigure(inst, from, to);
    json out;
    out["instance"] = instance_summary(inst);
    if (res.path) {
        auto check = validate_reconfiguration_path(inst, *res.path, from, to);
        if (!check.ok)
            fail_internal("PathValidationFailed",
                          "step " + std::to_string(check.index) + ": " + check.reason);
        out["result"] = "path";
        out["length"] = res.path->size() - 1;
        out["swaps"] = res.swaps;
        out["path"] = path_to_json(*res.path);
    } else {
        const Obstruction& ob = *res.obstruction;
        out["result"] = "obstruction";
        json copies = json::array();
        for (const auto& c : ob.copies) copies.push_back(json::array({c.p_side, c.q_side}));
        out["copies"] = std::move(copies);
        out["s_sides"] = ob.s_sides;
        out["t_sides"] = ob.t_sides;
        if (ob.stall) out["certificate"] = certificate_to_json(*ob.stall);
        // oracle-side report on the rest of the space, when enumerable
        try {
            ReconfigGraph rg = build_reconfig_graph(inst, enumeration_cap());
            auto comps = rg_components(rg);
            out["oracle"] = json{{"it_count", rg.its.size()},
                                 {"components", comps.size()},
                                 {"pair_connected", false}};
        } catch (const error&) {
            out["oracle"] = nullptr; // cap exceeded
        }
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_mcmc(const std::string& instance_arg, std::uint64_t steps, std::uint64_t seed,
             int chains, const std::string& trace_file) {
    Instance inst = load_instance(instance_arg);
    json out;
    out["instance"] = instance_summary(inst);
    out["generator"] = "mt19937_64";
    out["steps"] = steps;
    out["stream_discipline"] = "one stream per chain, seeds seed+0..seed+chains-1";

    std::optional<ReconfigGraph> rg;
    try {
        rg = build_reconfig_graph(inst, enumeration_cap());
    } catch (const error&) {
        // not enumerable under the cap: skip reference distribution
    }

    std::ofstream trace;
    if (!trace_file.empty()) {
        trace.open(trace_file);
        if (!trace) fail_input("FileNotFound", "cannot write " + trace_file);
    }

    json chain_reports = json::array();
    for (int c = 0; c < chains; ++c) {
        ChainReport rep = run_chain(
            inst, steps, seed + static_cast<std::uint64_t>(c),
            trace.is_open()
                ? std::function<void(const Transversal&, const Transversal&)>(
                      [&](const Transversal& a, const Transversal& b) {
                          json rec;
                          rec["from"] = transversal_to_json(a);
                          rec["to"] = transversal_to_json(b);
                          trace << rec.dump() << "\n";
                      })
                : std::function<void(const Transversal&, const Transversal&)>());
        json jc;
        jc["seed"] = rep.seed;
        jc["accepted"] = rep.accepted;
        jc["initial"] = transversal_to_json(rep.initial);
        jc["final"] = transversal_to_json(rep.final_config);
        jc["visits"] = visits_to_json(rep.visits);
        if (rg) {
            // uniform reference over the BFS component of the start
            int start = rg_index_of(*rg, rep.initial);
            auto comps = rg_components(*rg);
            std::vector<int> comp;
            for (const auto& cc : comps)
                if (std::find(cc.begin(), cc.end(), start) != cc.end()) comp = cc;
            std::vector<double> emp, ref;
            double total = static_cast<double>(steps + 1);
            for (int idx : comp) {
                auto it = rep.visits.find(rg->its[static_cast<size_t>(idx)]);
                emp.push_back(it == rep.visits.end()
                                  ? 0.0
                                  : static_cast<double>(it->second) / total);
                ref.push_back(1.0 / static_cast<double>(comp.size()));
            }
            jc["component_size"] = comp.size();
            jc["tv_to_uniform"] = tv_distance(emp, ref);
        }
        chain_reports.push_back(std::move(jc));
    }
    out["chains"] = std::move(chain_reports);
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct SuiteResult {
    std::string name;
    long long checks = 0;
    long long failed = 0;
    json notes = json::array();
};

json suite_to_json(const SuiteResult& s) {
    json j;
    j["name"] = s.name;
    j["checks"] = s.checks;
    j["failed"] = s.failed;
    if (!s.notes.empty()) j["notes"] = s.notes;
    return j;
}

int run_corpus(int delta_max, int max_blocks, int count, std::uint64_t seed,
               bool conjecture_scan, const std::string& csv_file) {
    json manifest = json::array();
    std::vector<std::pair<std::string, Instance>> items;

    // deterministic corpus: kdd placements, extremal shifts, random instances
    for (int delta = 1; delta <= delta_max; ++delta)
        for (int m = 1; m <= std::min(3, max_blocks); ++m)
            for (std::uint64_t p : {0ull, 1ull, 2ull}) {
                std::string spec = "gen:kdd:" + std::to_string(delta) + ":" + std::to_string(m) +
                                   ":" + (p == 0 ? "trivial" : p == 1 ? "lemma3" : "seed2");
                items.emplace_back(spec, gen_disjoint_kdd(delta, m, p));
            }
    int made = 0;
    for (std::uint64_t s = seed; made < count; ++s) {
        int delta = 1 + static_cast<int>(s % static_cast<std::uint64_t>(delta_max));
        int blocks = 2 + static_cast<int>((s / 3) % static_cast<std::uint64_t>(max_blocks - 1));
        int thickness = 2 * delta + static_cast<int>(s % 2);
        std::string spec = "gen:random:" + std::to_string(delta) + ":" + std::to_string(blocks) +
                           ":" + std::to_string(thickness) + ":seed" + std::to_string(s);
        items.emplace_back(spec, gen_random_instance(delta, blocks, thickness, s));
        ++made;
    }
    for (const auto& [spec, inst] : items) {
        json m;
        m["spec"] = spec;
        m["summary"] = instance_summary(inst);
        manifest.push_back(std::move(m));
    }

    SuiteResult haxell{"haxell_descent"};
    SuiteResult theorem2{"theorem2_connectivity"};
    SuiteResult thick_plus{"thick_plus_one_components"};
    SuiteResult engine{"reconfigure_vs_bfs"};
    SuiteResult kdd{"kdd_detection"};
    json conjecture = json::object();
    long long scanned = 0;
    long long min_count = -1;
    double min_ratio = -1;
    json flags = json::array();

    std::ofstream csv;
    if (!csv_file.empty()) {
        csv.open(csv_file);
        if (!csv) fail_input("FileNotFound", "cannot write " + csv_file);
        csv << "spec,n,delta,blocks,thickness,irreducible,kdd_union,it_count,components,"
               "conjecture_bound\n";
    }

    for (const auto& [spec, inst] : items) {
        // Theorem 1: the descent always lands on a valid IT of thick instances
        ++haxell.checks;
        if (inst.haxell_thick()) {
            auto res = find_it(inst);
            if (!is_full_it(inst, res.transversal)) {
                ++haxell.failed;
                haxell.notes.push_back(spec);
            }
        }

        // kdd detection on generated kdd unions
        if (spec.rfind("gen:kdd:", 0) == 0) {
            ++kdd.checks;
            if (!is_disjoint_kdd_union(inst)) {
                ++kdd.failed;
                kdd.notes.push_back(spec);
            }
        }

        std::optional<ReconfigGraph> rg;
        try {
            rg = build_reconfig_graph(inst, enumeration_cap());
        } catch (const error&) {
        }
        if (csv.is_open()) {
            csv << spec << "," << inst.n() << "," << inst.delta() << "," << inst.num_blocks()
                << "," << inst.thickness() << "," << (is_irreducible(inst) ? 1 : 0) << ","
                << (is_disjoint_kdd_union(inst) ? 1 : 0) << ","
                << (rg ? std::to_string(rg->its.size()) : "") << ","
                << (rg ? std::to_string(rg_components(*rg).size()) : "") << ",";
            long long bound = 2;
            for (int b = 0; b < inst.num_blocks(); ++b) bound *= inst.delta();
            csv << bound << "\n";
        }
        if (!rg) continue;

        // Theorem 2 on irreducible, thick, non-extremal instances
        if (inst.haxell_thick() && is_irreducible(inst) && !is_disjoint_kdd_union(inst) &&
            inst.delta() >= 1) {
            ++theorem2.checks;
            if (!rg_connected(*rg)) {
                ++theorem2.failed;
                theorem2.notes.push_back(spec);
            }
        }
        // (2*delta+1)-thick: every irreducible component connected
        if (inst.delta() >= 1 && inst.thickness() >= 2 * inst.delta() + 1) {
            for (const auto& comp : irreducible_components(inst)) {
                ++thick_plus.checks;
                if (!rg_connected(build_reconfig_graph(comp.instance, enumeration_cap()))) {
                    ++thick_plus.failed;
                    thick_plus.notes.push_back(spec);
                }
            }
        }
        // engine vs BFS on sampled pairs of irreducible thick instances
        if (inst.haxell_thick() && is_irreducible(inst) && inst.delta() >= 1) {
            auto comps = rg_components(*rg);
            std::vector<int> comp_of(rg->its.size());
            for (size_t ci = 0; ci < comps.size(); ++ci)
                for (int idx : comps[ci]) comp_of[static_cast<size_t>(idx)] = static_cast<int>(ci);
            std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
            size_t pairs = std::min<size_t>(rg->its.size() * rg->its.size(), 24);
            for (size_t rep = 0; rep < pairs; ++rep) {
                size_t i = static_cast<size_t>(uniform_below(rng, rg->its.size()));
                size_t j = static_cast<size_t>(uniform_below(rng, rg->its.size()));
                ++engine.checks;
                auto out = constructive_reconfigure(inst, rg->its[i], rg->its[j]);
                bool connected = comp_of[i] == comp_of[j];
                bool ok = connected
                              ? out.path.has_value() &&
                                    validate_reconfiguration_path(inst, *out.path, rg->its[i],
                                                                  rg->its[j])
                                        .ok
                              : out.obstruction.has_value();
                if (!ok) {
                    ++engine.failed;
                    engine.notes.push_back(spec);
                }
            }
        }
        // conjecture scan: IT count vs 2*delta^{|U|}
        if (conjecture_scan && inst.haxell_thick() && inst.delta() >= 1) {
            ++scanned;
            long long bound = 2;
            for (int b = 0; b < inst.num_blocks(); ++b) bound *= inst.delta();
            long long count = static_cast<long long>(rg->its.size());
            if (min_count < 0 || count < min_count) min_count = count;
            double ratio = static_cast<double>(count) / static_cast<double>(bound);
            if (min_ratio < 0 || ratio < min_ratio) min_ratio = ratio;
            if (static_cast<long long>(rg->its.size()) < bound) {
                json f;
                f["spec"] = spec;
                f["it_count"] = rg->its.size();
                f["bound"] = bound;
                flags.push_back(std::move(f));
            }
        }
    }

    json out;
    out["params"] = json{{"delta_max", delta_max},
                         {"max_blocks", max_blocks},
                         {"count", count},
                         {"seed", seed}};
    out["manifest"] = std::move(manifest);
    json suites = json::array();
    long long failed_total = 0;
    for (const auto* s : {&haxell, &theorem2, &thick_plus, &engine, &kdd}) {
        suites.push_back(suite_to_json(*s));
        failed_total += s->failed;
    }
    out["suites"] = std::move(suites);
    out["failed"] = failed_total;
    if (conjecture_scan) {
        conjecture["scanned"] = scanned;
        conjecture["min_it_count"] = min_count;
        conjecture["min_ratio_to_bound"] = min_ratio;
        conjecture["flags"] = std::move(flags);
        out["conjecture"] = std::move(conjecture);
    }
    std::cout << out.dump(2) << "\n";
    return failed_total == 0 ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"independent transversal toolkit"};
    app.require_subcommand(1);

    std::string instance_arg, trace_file, from_str, to_str, csv_file;
    std::uint64_t steps = 100000, seed = 0;
    int chains = 1;
    bool flag_enumerate = false, flag_connectivity = false, flag_diameter = false,
         flag_kdd = false, conjecture_scan = false;
    int delta_max = 2, max_blocks = 4, count = 40;

    auto* solve = app.add_subcommand("solve", "find an independent transversal");
    solve->add_option("instance", instance_arg, "instance file or gen: spec")->required();
    solve->add_option("--trace", trace_file, "write the descent trace as JSON lines");

    auto* analyze = app.add_subcommand("analyze", "enumerate and analyze the space of ITs");
    analyze->add_option("instance", instance_arg)->required();
    analyze->add_flag("--enumerate", flag_enumerate, "count independent transversals");
    analyze->add_flag("--connectivity", flag_connectivity, "reconfigurability components");
    analyze->add_flag("--diameter", flag_diameter, "per-component diameters");
    analyze->add_flag("--kdd-check", flag_kdd, "disjoint K_{delta,delta} union test");

    auto* reconfigure = app.add_subcommand("reconfigure", "find a reconfiguration path");
    reconfigure->add_option("instance", instance_arg)->required();
    reconfigure->add_option("--from", from_str, "start transversal, JSON array")->required();
    reconfigure->add_option("--to", to_str, "target transversal, JSON array")->required();

    auto* mcmc = app.add_subcommand("mcmc", "run the spin-system Markov chain");
    mcmc->add_option("instance", instance_arg)->required();
    mcmc->add_option("--steps", steps, "steps per chain");
    mcmc->add_option("--seed", seed, "base RNG seed");
    mcmc->add_option("--chains", chains, "number of independent chains");
    mcmc->add_option("--trace", trace_file, "write accepted moves as JSON lines");

    auto* corpus = app.add_subcommand("corpus", "generate a corpus and run the property suites");
    corpus->add_option("--delta-max", delta_max, "maximum degree bound");
    corpus->add_option("--max-blocks", max_blocks, "maximum number of blocks");
    corpus->add_option("--count", count, "number of random instances");
    corpus->add_option("--seed", seed, "base seed");
    corpus->add_flag("--conjecture-scan", conjecture_scan,
                     "report minimum IT counts against 2*delta^blocks");
    corpus->add_option("--csv", csv_file, "write a per-instance CSV summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return run_solve(instance_arg, trace_file);
        if (analyze->parsed())
            return run_analyze(instance_arg, flag_enumerate, flag_connectivity, flag_diameter,
                               flag_kdd);
        if (reconfigure->parsed()) return run_reconfigure(instance_arg, from_str, to_str);
        if (mcmc->parsed()) return run_mcmc(instance_arg, steps, seed, chains, trace_file);
        if (corpus->parsed())
            return run_corpus(delta_max, max_blocks, count, seed, conjecture_scan, csv_file);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.cat()) {
            case error::category::input: return 1;
            case error::category::precondition: return 2;
            case error::category::internal: return 3;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

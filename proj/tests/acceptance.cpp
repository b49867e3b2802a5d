// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
// 1. Greedy tower cost within [oracle, max(1, 2 ln|A|) * oracle] on 200+
//    small instances, exact integer comparison, under 120 s.
// 2. Star subroutine ratio equals subset enumeration on 500+ (instance, v,
//    delta) triples.
// 3. Worst-case chains reproduce (|A|/g - 1)(|B| + |A|/2) exactly.
// 4. Capacity feasibility + conservation on 500+ plans; case-1 instances
//    install exactly one copy per edge.
// 5. Line of sight on every emitted tree edge, including after omni
//    overrides (replaced hyperlink edges excepted).
// 6. Hybrid replacement only reduces cost, preserves topology/routes/flows,
//    and every adopted config passes its four constraints (re-verified by
//    the independent validator).
// 7. Residual capacity formula and range.
// 8. Closed-form ratio bounds at the reference points.
// 9. Byte-identical plans across repeated runs (library and CLI).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "meshplan/generator.hpp"
#include "meshplan/oracle.hpp"
#include "meshplan/plan.hpp"
#include "meshplan/rng.hpp"
#include "meshplan/validate.hpp"

using namespace meshplan;

namespace {

struct Outcome {
    bool pass = true;
    long checks = 0;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

GenParams small_params(std::uint64_t seed) {
    GenParams p;
    p.seed = seed;
    p.terminals = 3 + static_cast<int>(seed % 4);       // |A| in [3,6]
    p.non_terminals = static_cast<int>(seed % 5);       // |B| in [0,4]
    p.radio.HTMAX = 5.0;                                // 6 height levels
    p.radio.R = 2500.0;
    p.radio.R_MP = 2000.0;
    p.radio.R_Omni = 2500.0;
    p.ob_max = 4.5;
    p.area = 3000.0;
    p.demand_max = 6.0;
    return p;
}

GenParams medium_params(std::uint64_t seed) {
    GenParams p;
    p.seed = seed;
    p.terminals = 4 + static_cast<int>(seed % 5);
    p.non_terminals = static_cast<int>(seed % 5);
    // Hill profiles force tall towers, which is where hyperlinks pay off.
    p.ob_model = seed % 3 ? ObstructionModel::Hills : ObstructionModel::Uniform;
    if (seed % 7 == 0) {
        p.terminals = 3;
        p.demand_max = 3.0;  // keeps some instances in case 1
    }
    return p;
}

Outcome criterion1() {
    Outcome out;
    const double start = now_seconds();
    std::uint64_t seed = 1;
    while (out.checks < 200 && seed < 4000) {
        GenParams p = small_params(seed++);
        PlanningInstance inst;
        try {
            inst = generate_instance(p);
        } catch (const GenerationError&) {
            continue;
        }
        const auto sol = steiner_tc_solve(inst);
        double greedy = 0.0;
        for (int i = 0; i < inst.size(); ++i)
            if (inst.is_terminal(i)) greedy += inst.costs.tower(sol.heights[i]);
        OracleResult oracle;
        try {
            oracle = brute_force_steiner_tc(inst);
        } catch (const OracleRefusalError&) {
            continue;
        }
        const int A = inst.terminal_count();
        const double bound = std::max(1.0, 2.0 * std::log(A));
        if (!(oracle.tower_cost <= greedy))
            out.fail("greedy beat the oracle on seed " + std::to_string(seed - 1));
        if (!(greedy <= bound * oracle.tower_cost))
            out.fail("ratio bound violated on seed " + std::to_string(seed - 1));
        ++out.checks;
    }
    const double elapsed = now_seconds() - start;
    if (out.checks < 200) out.fail("only " + std::to_string(out.checks) + " instances");
    if (elapsed > 120.0) out.fail("runtime " + std::to_string(elapsed) + " s");
    out.detail = std::to_string(out.checks) + " instances in " +
                 std::to_string(elapsed).substr(0, 5) + " s" +
                 (out.pass ? "" : "; " + out.detail);
    return out;
}

Outcome criterion2() {
    Outcome out;
    std::uint64_t seed = 500;
    while (out.checks < 500 && seed < 3000) {
        GenParams p = small_params(seed);
        p.terminals = 4 + static_cast<int>(seed % 3);
        p.non_terminals = static_cast<int>(seed % 4);
        ++seed;
        PlanningInstance inst;
        try {
            inst = generate_instance(p);
        } catch (const GenerationError&) {
            continue;
        }
        HeightFunction h = initial_heights(inst);
        CoverState cov = cover(inst, h);

        for (int pass = 0; pass < 2 && cov.phi > 1; ++pass) {
            for (int v = 0; v < inst.size() && out.checks < 500; ++v) {
                if (!inst.is_terminal(v)) continue;
                for (double delta : doubling_deltas(inst, h[v])) {
                    if (logical_neighbors(inst, h, cov, v, delta).size() > 12) continue;
                    const auto fast = star_steiner_tc(inst, h, cov, v, delta);
                    const auto slow = brute_force_star(inst, h, cov, v, delta);
                    if (!ratio_equal(fast.ratio, slow.ratio))
                        out.fail("ratio mismatch: seed " + std::to_string(seed - 1) +
                                 " v=" + std::to_string(v) +
                                 " delta=" + std::to_string(delta));
                    ++out.checks;
                }
            }
            // Advance one greedy step so later triples see mid-solve states.
            StarResult best;
            int center = -1;
            for (int v = 0; v < inst.size(); ++v) {
                if (!inst.is_terminal(v)) continue;
                for (double delta : doubling_deltas(inst, h[v])) {
                    auto r = star_steiner_tc(inst, h, cov, v, delta);
                    if (r.ratio.infinite()) continue;
                    if (center == -1 || ratio_less(r.ratio, best.ratio)) {
                        best = r;
                        center = v;
                    }
                }
            }
            if (center == -1) break;
            for (const auto& [vertex, incr] : best.increments) h[vertex] += incr;
            cov = cover(inst, h);
        }
    }
    if (out.checks < 500) out.fail("only " + std::to_string(out.checks) + " triples");
    out.detail = std::to_string(out.checks) + " triples" +
                 (out.pass ? "" : "; " + out.detail);
    return out;
}

Outcome criterion3() {
    Outcome out;
    for (auto [A, B, g] :
         {std::tuple{8, 3, 2}, std::tuple{6, 0, 2}, std::tuple{10, 4, 5}}) {
        auto inst = build_worst_chain(A, B, g, 4.0);
        auto sol = steiner_tc_solve(inst);
        auto groups = partition_groups(inst, sol.tree);
        long long measured = 0;
        for (const auto& grp : groups) measured += sol.tree.depth[grp.hub];
        const long long expected = worst_chain_hub_distance(A, B, g);
        if (measured != expected)
            out.fail("chain (" + std::to_string(A) + "," + std::to_string(B) + "," +
                     std::to_string(g) + "): " + std::to_string(measured) +
                     " != " + std::to_string(expected));
        ++out.checks;
    }
    out.detail = "3 chains" + (out.pass ? "" : "; " + out.detail);
    return out;
}

struct SharedRun {
    Outcome capacity;   // criterion 4
    Outcome los;        // criterion 5
    Outcome hybrid;     // criterion 6
    long case1_plans = 0;
    long adopted_configs = 0;
};

void run_shared(SharedRun& r) {
    std::uint64_t seed = 9000;
    long plans = 0;
    while (plans < 500 && seed < 12000) {
        GenParams p = medium_params(seed++);
        PlanningInstance inst;
        try {
            inst = generate_instance(p);
        } catch (const GenerationError&) {
            continue;
        }
        ++plans;

        const auto digest = fnv1a_hex(instance_to_json(inst).dump());
        PlanOptions plain;
        plain.hybrid = HybridOrder::None;
        const auto base = run_plan(inst, plain, digest);
        PlanOptions with;
        with.hybrid = HybridOrder::MpThenOmni;
        const auto full = run_plan(inst, with, digest);

        // Criterion 4: capacity feasibility, conservation, case-1 copies.
        const auto& cap = base.capacity;
        double total = 0.0;
        for (const auto& g : cap.groups) {
            total += g.demand;
            if (g.demand - inst.vertices[g.hub].demand >
                inst.radio.U - inst.vertices[g.hub].demand)
                r.capacity.fail("internal traffic over U - dem(hub), seed " +
                                std::to_string(seed - 1));
        }
        for (std::size_t e = 0; e < cap.flow.size(); ++e) {
            if (cap.flow[e] > inst.radio.U * cap.copies[e])
                r.capacity.fail("f > U * copies, seed " + std::to_string(seed - 1));
            if (cap.copies[e] < 1)
                r.capacity.fail("tree edge without a link, seed " +
                                std::to_string(seed - 1));
        }
        if (total <= inst.radio.U) {
            ++r.case1_plans;
            for (int c : cap.copies)
                if (c != 1)
                    r.capacity.fail("case-1 extra copies, seed " +
                                    std::to_string(seed - 1));
        }
        // The validator re-derives flows and checks conservation vertex by vertex.
        const auto base_errs = validate_plan(inst, plan_to_json(inst, base), digest);
        if (!base_errs.empty())
            r.capacity.fail("validator: " + base_errs.front() + ", seed " +
                            std::to_string(seed - 1));
        ++r.capacity.checks;

        // Criterion 5: line of sight on the emitted tree, before and after
        // hybrid overrides (omni-replaced edges are no longer p2p).
        for (const auto& e : base.solution.tree.edges)
            if (!los_covered(inst, e.instance_edge, base.solution.heights))
                r.los.fail("pre-hybrid LOS, seed " + std::to_string(seed - 1));
        if (full.hybrid) {
            const auto h2 = full.hybrid->apply_overrides(full.solution.heights);
            for (int te = 0; te < static_cast<int>(full.solution.tree.edges.size());
                 ++te) {
                if (full.hybrid->replaced_omni[te]) continue;
                if (!los_covered(inst, full.solution.tree.edges[te].instance_edge, h2))
                    r.los.fail("post-override LOS, seed " + std::to_string(seed - 1));
            }
        }
        ++r.los.checks;

        // Criterion 6: monotone cost, untouched topology, constraints held.
        const auto jbase = plan_to_json(inst, base);
        const auto jfull = plan_to_json(inst, full);
        if (jbase.at("steiner_tree") != jfull.at("steiner_tree") ||
            jbase.at("capacity") != jfull.at("capacity") ||
            jbase.at("heights") != jfull.at("heights"))
            r.hybrid.fail("hybrid altered the base plan, seed " +
                          std::to_string(seed - 1));
        if (full.hybrid) {
            const double delta = full.hybrid->cost_delta;
            const std::size_t configs = full.hybrid->mp.size() + full.hybrid->omni.size();
            r.adopted_configs += static_cast<long>(configs);
            if (delta > 0)
                r.hybrid.fail("cost increased, seed " + std::to_string(seed - 1));
            if (configs > 0 && !(delta < 0))
                r.hybrid.fail("adoption without strict decrease, seed " +
                              std::to_string(seed - 1));
            if (full.costs.total != base.costs.total + delta)
                r.hybrid.fail("cost delta inconsistent, seed " +
                              std::to_string(seed - 1));
        }
        const auto full_errs = validate_plan(inst, jfull, digest);
        if (!full_errs.empty())
            r.hybrid.fail("validator: " + full_errs.front() + ", seed " +
                          std::to_string(seed - 1));
        ++r.hybrid.checks;
    }

    if (r.capacity.checks < 500) r.capacity.fail("too few plans");
    if (r.hybrid.checks < 500) r.hybrid.fail("too few plans");
    if (r.case1_plans == 0) r.capacity.fail("no case-1 instances generated");
    if (r.adopted_configs == 0) r.hybrid.fail("no hyperlink was ever adopted");

    r.capacity.detail = std::to_string(r.capacity.checks) + " plans, " +
                        std::to_string(r.case1_plans) + " in case 1" +
                        (r.capacity.pass ? "" : "; " + r.capacity.detail);
    r.los.detail = std::to_string(r.los.checks) + " plans" +
                   (r.los.pass ? "" : "; " + r.los.detail);
    r.hybrid.detail = std::to_string(r.hybrid.checks) + " plans, " +
                      std::to_string(r.adopted_configs) + " configs adopted" +
                      (r.hybrid.pass ? "" : "; " + r.hybrid.detail);
}

Outcome criterion7() {
    Outcome out;
    Rng rng(777);
    for (int i = 0; i < 2000; ++i) {
        const double U = static_cast<double>(rng.uniform_int(1, 100));
        // Quarter-multiples of U and plain integers are exact in binary.
        const double f = (i % 2 == 0)
                             ? U * static_cast<double>(rng.uniform_int(0, 12)) / 4.0
                             : static_cast<double>(rng.uniform_int(0, 300));
        const double res = residual_capacity(f, U);
        const double expect = U * std::ceil(f / U) - f;
        if (res != expect) out.fail("formula mismatch");
        if (res < 0.0 || res >= U) out.fail("residual out of [0, U)");
        if (f == 0.0 && res != 0.0) out.fail("residual nonzero at f = 0");
        const double k = f / U;
        if (k == std::floor(k) && res != 0.0) out.fail("residual nonzero at f = kU");
        ++out.checks;
    }
    out.detail = std::to_string(out.checks) + " samples" +
                 (out.pass ? "" : "; " + out.detail);
    return out;
}

Outcome criterion8() {
    Outcome out;
    const double case1 = performance_ratio_bound(10, 5, 1.0, 1);
    const double case2 = performance_ratio_bound(10, 5, 5.0, 2);
    if (std::abs(case1 - 6.1052) > 1e-4)
        out.fail("case 1 = " + std::to_string(case1));
    if (std::abs(case2 - 9.8026) > 1e-4)
        out.fail("case 2 = " + std::to_string(case2));
    out.checks = 2;
    out.detail = out.pass ? "both reference points" : out.detail;
    return out;
}

Outcome criterion9() {
    Outcome out;
    GenParams p;
    p.seed = 77;
    p.terminals = 7;
    p.non_terminals = 3;
    p.ob_model = ObstructionModel::Hills;
    auto inst = generate_instance(p);
    const auto digest = fnv1a_hex(instance_to_json(inst).dump());

    PlanOptions opts;
    opts.trace = true;
    const auto a = plan_to_json(inst, run_plan(inst, opts, digest)).dump(2);
    const auto b = plan_to_json(inst, run_plan(inst, opts, digest)).dump(2);
    if (a != b) out.fail("library plans differ between runs");
    out.detail = "library";
    ++out.checks;

    if (const char* cli = std::getenv("MESHPLAN_CLI")) {
        const std::string dir = "/tmp/meshplan_accept";
        if (std::system(("mkdir -p " + dir).c_str()) != 0) {
            out.fail("cannot create scratch directory");
            return out;
        }
        write_file(dir + "/inst.json", instance_to_json(inst).dump(2) + "\n");
        const std::string base = std::string(cli) + " plan " + dir +
                                 "/inst.json --trace -o " + dir;
        if (std::system((base + "/p1.json").c_str()) != 0 ||
            std::system((base + "/p2.json").c_str()) != 0) {
            out.fail("CLI run failed");
        } else if (read_file(dir + "/p1.json") != read_file(dir + "/p2.json")) {
            out.fail("CLI plans differ between runs");
        }
        out.detail += " + CLI";
        ++out.checks;
    }
    return out;
}

}  // namespace

int main() {
    struct Row {
        int id;
        const char* name;
        Outcome outcome;
    };
    std::vector<Row> rows;
    rows.push_back({1, "greedy within [oracle, 2 ln|A| * oracle]", criterion1()});
    rows.push_back({2, "star ratio equals subset enumeration", criterion2()});
    rows.push_back({3, "worst-case chain hub distances", criterion3()});

    SharedRun shared;
    run_shared(shared);
    rows.push_back({4, "capacity feasibility and conservation", shared.capacity});
    rows.push_back({5, "line of sight on emitted trees", shared.los});
    rows.push_back({6, "hybrid monotonicity and preservation", shared.hybrid});

    rows.push_back({7, "residual capacity formula", criterion7()});
    rows.push_back({8, "performance ratio bound values", criterion8()});
    rows.push_back({9, "byte-identical repeated plans", criterion9()});

    bool all = true;
    for (const auto& row : rows) {
        all &= row.outcome.pass;
        std::printf("[%s] criterion %d: %s (%s)\n",
                    row.outcome.pass ? "PASS" : "FAIL", row.id, row.name,
                    row.outcome.detail.c_str());
    }
    return all ? 0 : 1;
}

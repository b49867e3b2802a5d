// meshplan: plan middle-mile wireless mesh deployments.
//
// Subcommands: gen (random or worst-case-chain instances), plan (full
// pipeline to a plan document), oracle-compare (greedy vs exhaustive tower
// cost), report (cost bound report), validate (re-check a plan document).

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meshplan/analysis.hpp"
#include "meshplan/generator.hpp"
#include "meshplan/instance_io.hpp"
#include "meshplan/oracle.hpp"
#include "meshplan/plan.hpp"
#include "meshplan/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitGeneration = 4;

int log_level() {
    const char* env = std::getenv("MESHPLAN_LOG");
    return env ? std::atoi(env) : 0;
}

void log_info(const std::string& msg) {
    if (log_level() > 0) std::cerr << "[meshplan] " << msg << "\n";
}

int cmd_gen(const meshplan::GenParams& params, bool chain, int chain_terminals,
            int chain_non_terminals, int chain_gamma, double chain_demand,
            const std::string& out_path) {
    meshplan::PlanningInstance inst;
    if (chain) {
        inst = meshplan::build_worst_chain(chain_terminals, chain_non_terminals,
                                           chain_gamma, chain_demand);
    } else {
        inst = meshplan::generate_instance(params);
    }
    const std::string text = meshplan::instance_to_json(inst).dump(2) + "\n";
    if (out_path.empty() || out_path == "-")
        std::cout << text;
    else
        meshplan::write_file(out_path, text);
    log_info("generated instance with " + std::to_string(inst.size()) + " vertices");
    return kExitOk;
}

int cmd_plan(const std::string& instance_path, const std::string& hybrid,
             bool trace, double height_step_override, const std::string& out_path) {
    const std::string raw = meshplan::read_file(instance_path);
    meshplan::PlanningInstance inst = meshplan::parse_instance_text(raw);
    if (height_step_override > 0) {
        inst.height_step = height_step_override;
        inst.validate();
    }

    meshplan::PlanOptions opts;
    const auto order = meshplan::parse_hybrid_order(hybrid);
    if (!order) {
        std::cerr << "error: unknown --hybrid value '" << hybrid << "'\n";
        return kExitBadInput;
    }
    opts.hybrid = *order;
    opts.trace = trace;

    const auto doc = meshplan::run_plan(inst, opts, meshplan::fnv1a_hex(raw));
    log_info("solved in " + std::to_string(doc.solution.trace.size()) +
             " iterations; tree has " + std::to_string(doc.solution.tree.edges.size()) +
             " edges; total cost " + std::to_string(doc.costs.total));
    const std::string text = meshplan::plan_to_json(inst, doc).dump(2) + "\n";
    if (out_path.empty() || out_path == "-")
        std::cout << text;
    else
        meshplan::write_file(out_path, text);
    return kExitOk;
}

int cmd_oracle_compare(const std::vector<std::string>& paths, std::uint64_t max_space) {
    bool any_fail = false;
    int skipped = 0;
    std::printf("%-32s %12s %12s %8s %8s  %s\n", "instance", "greedy", "oracle",
                "ratio", "bound", "status");
    for (const auto& path : paths) {
        meshplan::PlanningInstance inst;
        try {
            inst = meshplan::load_instance(path);
        } catch (const meshplan::ValidationError& ex) {
            std::cerr << path << ": " << ex.what() << "\n";
            return kExitBadInput;
        }
        double greedy_cost = 0.0;
        try {
            const auto sol = meshplan::steiner_tc_solve(inst);
            for (int i = 0; i < inst.size(); ++i)
                if (inst.is_terminal(i)) greedy_cost += inst.costs.tower(sol.heights[i]);
        } catch (const meshplan::InfeasibleError& ex) {
            std::cerr << path << ": " << ex.what() << "\n";
            return kExitInfeasible;
        }
        try {
            const auto oracle = meshplan::brute_force_steiner_tc(inst, max_space);
            int terminals = inst.terminal_count();
            const double bound = std::max(1.0, 2.0 * std::log(terminals));
            const double ratio =
                oracle.tower_cost > 0 ? greedy_cost / oracle.tower_cost : 1.0;
            const bool pass = oracle.tower_cost <= greedy_cost &&
                              greedy_cost <= bound * oracle.tower_cost;
            any_fail |= !pass;
            std::printf("%-32s %12.0f %12.0f %8.4f %8.4f  %s\n", path.c_str(),
                        greedy_cost, oracle.tower_cost, ratio, bound,
                        pass ? "PASS" : "FAIL");
        } catch (const meshplan::OracleRefusalError& ex) {
            ++skipped;
            std::printf("%-32s %12.0f %12s %8s %8s  SKIP (%s)\n", path.c_str(),
                        greedy_cost, "-", "-", "-", ex.what());
        }
    }
    if (skipped > 0)
        std::printf("# %d instance(s) skipped: oracle refused the search space\n",
                    skipped);
    return any_fail ? kExitCheckFailure : kExitOk;
}

int cmd_report(const std::string& instance_path) {
    const auto inst = meshplan::load_instance(instance_path);
    const auto rep = meshplan::bound_report(inst);
    std::printf("|A| = %d  |B| = %d  gamma = %.6g\n", rep.terminals, rep.non_terminals,
                rep.gamma);
    std::printf("case %d performance ratio bound = %.6f\n", rep.case_id, rep.ratio);
    const auto g = static_cast<int>(rep.gamma);
    if (rep.gamma > 0 && rep.gamma == g && rep.terminals % g == 0) {
        std::printf("worst-chain hub distance = %lld\n",
                    meshplan::worst_chain_hub_distance(rep.terminals, rep.non_terminals, g));
    } else {
        std::printf("worst-chain hub distance = n/a (gamma does not divide |A|)\n");
    }
    return kExitOk;
}

int cmd_validate(const std::string& instance_path, const std::string& plan_path) {
    const std::string raw = meshplan::read_file(instance_path);
    const auto inst = meshplan::parse_instance_text(raw);
    meshplan::ordered_json plan;
    try {
        plan = meshplan::ordered_json::parse(meshplan::read_file(plan_path));
    } catch (const nlohmann::json::exception& ex) {
        std::cerr << "plan is not valid JSON: " << ex.what() << "\n";
        return kExitBadInput;
    }
    const auto errs = meshplan::validate_plan(inst, plan, meshplan::fnv1a_hex(raw));
    if (errs.empty()) {
        std::printf("plan valid: every module invariant re-checked\n");
        return kExitOk;
    }
    for (const auto& e : errs) std::printf("violation: %s\n", e.c_str());
    return kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"middle-mile wireless mesh planning toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random or worst-case instance");
    meshplan::GenParams params;
    bool chain = false;
    int chain_terminals = 8, chain_non_terminals = 3, chain_gamma = 2;
    double chain_demand = 5.0;
    std::string gen_out;
    std::string ob_model = "uniform";
    gen->add_option("--seed", params.seed, "RNG seed");
    gen->add_option("--terminals", params.terminals, "terminal count, landline included");
    gen->add_option("--non-terminals", params.non_terminals, "relay count");
    gen->add_option("--area", params.area, "square side, m");
    gen->add_option("--demand-min", params.demand_min, "minimum demand, Mbps");
    gen->add_option("--demand-max", params.demand_max, "maximum demand, Mbps");
    gen->add_option("--ob-model", ob_model, "obstruction model: uniform|hills");
    gen->add_option("--ob-max", params.ob_max, "obstruction height scale, m");
    gen->add_option("--capacity", params.radio.U, "p2p link capacity, Mbps");
    gen->add_option("--range", params.radio.R, "p2p range, m");
    gen->add_option("--htmax", params.radio.HTMAX, "maximum tower height, m");
    gen->add_option("--height-step", params.height_step, "height grid, m");
    gen->add_option("--tower-cost-per-m", params.tower_cost_per_m, "tower cost slope");
    gen->add_option("--link-unit-cost", params.link_unit_cost, "p2p link unit cost");
    gen->add_flag("--chain", chain, "emit the worst-case chain topology");
    gen->add_option("--chain-terminals", chain_terminals, "chain |A|");
    gen->add_option("--chain-non-terminals", chain_non_terminals, "chain |B|");
    gen->add_option("--chain-gamma", chain_gamma, "chain capacity/demand ratio");
    gen->add_option("--chain-demand", chain_demand, "chain per-terminal demand");
    gen->add_option("-o,--output", gen_out, "output path (default stdout)");

    // plan
    auto* plan = app.add_subcommand("plan", "solve an instance end to end");
    std::string plan_instance, plan_out, hybrid = "mp,omni";
    bool trace = false;
    double height_step_override = 0.0;
    plan->add_option("instance", plan_instance, "instance JSON path")->required();
    plan->add_option("--hybrid", hybrid, "none|mp|omni|mp,omni|omni,mp");
    plan->add_flag("--trace", trace, "emit the greedy iteration trace");
    plan->add_option("--height-step", height_step_override, "override the height grid");
    plan->add_option("-o,--output", plan_out, "output path (default stdout)");

    // oracle-compare
    auto* oc = app.add_subcommand("oracle-compare",
                                  "compare greedy tower cost against the exhaustive optimum");
    std::vector<std::string> oc_paths;
    std::uint64_t max_space = 2'000'000;
    oc->add_option("instances", oc_paths, "instance JSON paths")->required();
    oc->add_option("--max-space", max_space, "oracle enumeration budget");

    // report
    auto* report = app.add_subcommand("report", "print the applicable cost bound");
    std::string report_instance;
    report->add_option("instance", report_instance, "instance JSON path")->required();

    // validate
    auto* validate = app.add_subcommand("validate", "re-check a plan document");
    std::string val_instance, val_plan;
    validate->add_option("instance", val_instance, "instance JSON path")->required();
    validate->add_option("plan", val_plan, "plan JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            params.ob_model = ob_model == "hills" ? meshplan::ObstructionModel::Hills
                                                  : meshplan::ObstructionModel::Uniform;
            return cmd_gen(params, chain, chain_terminals, chain_non_terminals,
                           chain_gamma, chain_demand, gen_out);
        }
        if (plan->parsed())
            return cmd_plan(plan_instance, hybrid, trace, height_step_override, plan_out);
        if (oc->parsed()) return cmd_oracle_compare(oc_paths, max_space);
        if (report->parsed()) return cmd_report(report_instance);
        if (validate->parsed()) return cmd_validate(val_instance, val_plan);
    } catch (const meshplan::GenerationError& ex) {
        std::cerr << "generation failed: " << ex.what() << "\n";
        return kExitGeneration;
    } catch (const meshplan::InfeasibleError& ex) {
        std::cerr << "infeasible: " << ex.what() << "\n";
        return kExitInfeasible;
    } catch (const meshplan::ValidationError& ex) {
        std::cerr << "invalid input: " << ex.what() << "\n";
        return kExitBadInput;
    } catch (const meshplan::Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitOk;
}

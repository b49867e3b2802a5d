#include "meshplan/plan.hpp"

#include <algorithm>

namespace meshplan {

PlanDocument run_plan(const PlanningInstance& inst, const PlanOptions& opts,
                      const std::string& instance_digest) {
    PlanDocument doc;
    doc.instance_digest = instance_digest.empty()
                              ? fnv1a_hex(instance_to_json(inst).dump())
                              : instance_digest;
    doc.with_trace = opts.trace;

    doc.solution = steiner_tc_solve(inst);
    const auto groups = partition_groups(inst, doc.solution.tree);
    doc.capacity = install_capacity(inst, doc.solution.tree, groups);

    if (opts.hybrid != HybridOrder::None) {
        doc.hybrid = deploy_hybrid(inst, doc.solution.tree, doc.capacity,
                                   doc.solution.heights, opts.hybrid);
        doc.power = doc.hybrid->power;
    } else {
        HybridPlan empty;
        empty.replaced_mp.assign(doc.solution.tree.edges.size(), 0);
        empty.replaced_omni.assign(doc.solution.tree.edges.size(), 0);
        doc.power = assign_transmit_power(inst, doc.solution.tree, empty);
    }

    doc.costs = total_cost(inst, doc.solution.tree, doc.capacity, doc.solution.heights,
                           doc.hybrid ? &*doc.hybrid : nullptr);
    doc.bounds = bound_report(inst);
    return doc;
}

namespace {

ordered_json edge_value_rows(const PlanningInstance& inst, const SteinerTree& tree,
                             const std::vector<double>& values) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < tree.edges.size(); ++i) {
        const auto& e = tree.edges[i];
        const int a = std::min(inst.id_of(e.child), inst.id_of(e.parent));
        const int b = std::max(inst.id_of(e.child), inst.id_of(e.parent));
        rows.push_back(ordered_json::array({a, b, values[i]}));
    }
    return rows;
}

ordered_json id_list(const PlanningInstance& inst, const std::vector<int>& indices) {
    std::vector<int> ids;
    ids.reserve(indices.size());
    for (int v : indices) ids.push_back(inst.id_of(v));
    std::sort(ids.begin(), ids.end());
    return ordered_json(ids);
}

}  // namespace

ordered_json plan_to_json(const PlanningInstance& inst, const PlanDocument& doc) {
    const auto& tree = doc.solution.tree;
    ordered_json out;
    out["schema"] = "meshplan-plan-v1";
    out["instance_digest"] = doc.instance_digest;

    ordered_json heights = ordered_json::array();
    for (int i = 0; i < inst.size(); ++i)
        heights.push_back(ordered_json::array({inst.id_of(i), doc.solution.heights[i]}));
    out["heights"] = heights;

    ordered_json jtree;
    jtree["root"] = inst.id_of(tree.root);
    ordered_json tedges = ordered_json::array();
    for (const auto& e : tree.edges) {
        const int a = std::min(inst.id_of(e.child), inst.id_of(e.parent));
        const int b = std::max(inst.id_of(e.child), inst.id_of(e.parent));
        tedges.push_back(ordered_json::array({a, b}));
    }
    jtree["edges"] = tedges;
    out["steiner_tree"] = jtree;

    ordered_json jcap;
    jcap["groups"] = ordered_json::array();
    for (const auto& g : doc.capacity.groups) {
        ordered_json jg;
        jg["members"] = id_list(inst, g.members);
        jg["hub"] = inst.id_of(g.hub);
        jg["demand"] = g.demand;
        jcap["groups"].push_back(jg);
    }
    jcap["routes"] = ordered_json::array();
    for (const auto& [t, path] : doc.capacity.routes) {
        ordered_json ids = ordered_json::array();
        for (int v : path) ids.push_back(inst.id_of(v));
        jcap["routes"].push_back(ordered_json::array({inst.id_of(t), ids}));
    }
    jcap["flows"] = edge_value_rows(inst, tree, doc.capacity.flow);
    jcap["copies"] = ordered_json::array();
    for (std::size_t i = 0; i < tree.edges.size(); ++i) {
        const auto& e = tree.edges[i];
        const int a = std::min(inst.id_of(e.child), inst.id_of(e.parent));
        const int b = std::max(inst.id_of(e.child), inst.id_of(e.parent));
        jcap["copies"].push_back(ordered_json::array({a, b, doc.capacity.copies[i]}));
    }
    out["capacity"] = jcap;

    ordered_json jh;
    jh["order"] = to_string(doc.hybrid ? doc.hybrid->order : HybridOrder::None);
    if (doc.hybrid) {
        jh["mp"] = ordered_json::array();
        for (const auto& cfg : doc.hybrid->mp) {
            ordered_json jc;
            jc["apex"] = inst.id_of(cfg.apex);
            jc["direction"] = inst.id_of(cfg.direction);
            jc["beamwidth"] = cfg.beamwidth;
            jc["radius"] = cfg.radius;
            jc["covered"] = id_list(inst, cfg.covered);
            jh["mp"].push_back(jc);
        }
        jh["omni"] = ordered_json::array();
        for (const auto& cfg : doc.hybrid->omni) {
            ordered_json jc;
            jc["center"] = inst.id_of(cfg.center);
            jc["radius"] = cfg.radius;
            jc["covered"] = id_list(inst, cfg.covered);
            jc["subordinate"] = id_list(inst, cfg.subordinate);
            jh["omni"].push_back(jc);
        }
        jh["height_overrides"] = ordered_json::array();
        for (const auto& [v, hgt] : doc.hybrid->height_overrides)
            jh["height_overrides"].push_back(ordered_json::array({inst.id_of(v), hgt}));
        jh["cost_delta"] = doc.hybrid->cost_delta;
    }
    ordered_json jpw;
    jpw["p2p"] = ordered_json::array();
    for (const auto& [te, p] : doc.power.p2p) {
        const auto& e = tree.edges[te];
        const int a = std::min(inst.id_of(e.child), inst.id_of(e.parent));
        const int b = std::max(inst.id_of(e.child), inst.id_of(e.parent));
        jpw["p2p"].push_back(ordered_json::array({a, b, p}));
    }
    jpw["mp"] = doc.power.mp;
    jpw["omni"] = doc.power.omni;
    jh["power"] = jpw;
    out["hybrid"] = jh;

    out["costs"] = {{"tower", doc.costs.tower},
                    {"link", doc.costs.link},
                    {"antenna", doc.costs.antenna},
                    {"total", doc.costs.total}};
    out["bounds"] = {{"terminals", doc.bounds.terminals},
                     {"non_terminals", doc.bounds.non_terminals},
                     {"gamma", doc.bounds.gamma},
                     {"case", doc.bounds.case_id},
                     {"ratio", doc.bounds.ratio}};
    if (doc.with_trace) {
        out["trace"] = ordered_json::array();
        for (const auto& t : doc.solution.trace)
            out["trace"].push_back({{"cost", t.cost},
                                    {"benefit", t.benefit},
                                    {"phi_before", t.phi_before},
                                    {"phi_after", t.phi_after}});
    }
    return out;
}

}  // namespace meshplan

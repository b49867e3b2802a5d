#include "meshplan/cnd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace meshplan {

std::vector<int> post_order_terminals(const PlanningInstance& inst,
                                      const SteinerTree& tree) {
    std::vector<int> order;
    std::function<void(int)> walk = [&](int v) {
        for (int c : tree.children[v]) walk(c);
        if (inst.is_terminal(v)) order.push_back(v);
    };
    walk(tree.root);
    return order;
}

std::vector<Group> partition_groups(const PlanningInstance& inst,
                                    const SteinerTree& tree) {
    const double U = inst.radio.U;
    for (const auto& v : inst.vertices)
        if (v.is_terminal() && v.demand > U)
            throw InfeasibleError("terminal " + std::to_string(v.id) +
                                  " demand exceeds link capacity");

    std::vector<Group> groups;
    Group cur;
    for (int t : post_order_terminals(inst, tree)) {
        const double d = inst.vertices[t].demand;
        if (!cur.members.empty() && cur.demand + d > U) {
            groups.push_back(std::move(cur));
            cur = Group{};
        }
        cur.members.push_back(t);
        cur.demand += d;
    }
    if (!cur.members.empty()) groups.push_back(std::move(cur));

    for (auto& g : groups) g.hub = select_hub(tree, g);
    return groups;
}

int select_hub(const SteinerTree& tree, const Group& group) {
    int hub = -1;
    for (int m : group.members) {
        if (hub == -1 || tree.depth[m] < tree.depth[hub] ||
            (tree.depth[m] == tree.depth[hub] && m < hub))
            hub = m;
    }
    return hub;
}

namespace {

// Tree path between two vertices as edge indices (undirected).
std::vector<int> tree_path_edges(const SteinerTree& tree, int from, int to) {
    std::vector<int> edges;
    int a = from, b = to;
    std::vector<int> up_a, up_b;
    while (a != b) {
        if (tree.depth[a] >= tree.depth[b]) {
            up_a.push_back(tree.edge_index(a, tree.parent[a]));
            a = tree.parent[a];
        } else {
            up_b.push_back(tree.edge_index(b, tree.parent[b]));
            b = tree.parent[b];
        }
    }
    edges = std::move(up_a);
    edges.insert(edges.end(), up_b.rbegin(), up_b.rend());
    return edges;
}

}  // namespace

CapacityPlan install_capacity(const PlanningInstance& inst, const SteinerTree& tree,
                              const std::vector<Group>& groups) {
    CapacityPlan plan;
    plan.groups = groups;
    plan.flow.assign(tree.edges.size(), 0.0);
    plan.copies.assign(tree.edges.size(), 1);

    for (int v = 0; v < inst.size(); ++v) {
        if (!inst.is_terminal(v)) continue;
        std::vector<int> path;
        for (int w : tree.path_to_root(v)) path.push_back(w);
        plan.routes.emplace_back(v, std::move(path));
    }

    // Internal legs ride the base links: every member's demand to its hub.
    for (const auto& g : groups) {
        for (int m : g.members) {
            if (m == g.hub) continue;
            for (int e : tree_path_edges(tree, m, g.hub))
                plan.flow[e] += inst.vertices[m].demand;
        }
    }

    // Group aggregates to the landline, adding a copy wherever the cumulative
    // flow outgrows the installed capacity.
    const double U = inst.radio.U;
    for (const auto& g : groups) {
        for (int e : tree_path_edges(tree, g.hub, tree.root)) {
            plan.flow[e] += g.demand;
            if (plan.flow[e] > U * plan.copies[e]) ++plan.copies[e];
        }
    }

    // The hub-path rule covers the common cases; straddling groups can still
    // push internal legs past one base link, so top up to the contract.
    for (std::size_t e = 0; e < plan.flow.size(); ++e) {
        while (plan.flow[e] > U * plan.copies[e]) ++plan.copies[e];
        if (plan.flow[e] > U * plan.copies[e])
            throw InconsistencyError("capacity violated after installation");
    }
    return plan;
}

double residual_capacity(double flow, double capacity) {
    return capacity * std::ceil(flow / capacity) - flow;
}

}  // namespace meshplan

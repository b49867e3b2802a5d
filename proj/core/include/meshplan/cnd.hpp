#pragma once

#include <vector>

#include "meshplan/steiner_tc.hpp"

namespace meshplan {

/// A capacity-bounded set of terminals; the hub (the member closest to the
/// landline in tree hops) forwards the aggregated demand.
struct Group {
    std::vector<int> members;  // vertex indices
    int hub = -1;
    double demand = 0.0;       // aggregated Mbps
};

/// Installed capacity on the Steiner tree: per-edge flows and link copies,
/// plus each terminal's route to the landline.
struct CapacityPlan {
    std::vector<Group> groups;
    std::vector<double> flow;  // per tree edge index
    std::vector<int> copies;
    std::vector<std::pair<int, std::vector<int>>> routes;  // (terminal, path to root)
};

/// Deterministic post-order accumulation rooted at the landline, closing a
/// group whenever the next terminal would push it over U.
std::vector<Group> partition_groups(const PlanningInstance& inst, const SteinerTree& tree);

/// Member with minimum tree hop distance to the landline; ties to smaller id.
int select_hub(const SteinerTree& tree, const Group& group);

/// One base link per tree edge; each terminal's demand travels to its hub and
/// the group aggregate travels hub -> landline, adding a link copy on a hub
/// path edge whenever the cumulative flow exceeds the installed capacity.
CapacityPlan install_capacity(const PlanningInstance& inst, const SteinerTree& tree,
                              const std::vector<Group>& groups);

/// U * ceil(f/U) - f: unused bandwidth on an edge's installed links.
double residual_capacity(double flow, double capacity);

/// Post-order list of terminal vertex indices (landline last), children
/// visited in ascending order.
std::vector<int> post_order_terminals(const PlanningInstance& inst, const SteinerTree& tree);

}  // namespace meshplan

#pragma once

#include "meshplan/model.hpp"

namespace meshplan {

/// Which worst-case ratio applies: case 1 when the total demand fits one
/// link, case 2 for uniform demands beyond that, case 3 otherwise (gamma then
/// uses the maximum demand).
struct BoundReport {
    int terminals = 0;      // |A|
    int non_terminals = 0;  // |B|
    double gamma = 0.0;
    int case_id = 1;
    double ratio = 0.0;
};

/// Case 1: 1 + 2 ln|A| + |B|/|A|.  Cases 2/3: 3 + ln|A| + |B|/|A| + (|A|+2|B|)/gamma.
double performance_ratio_bound(double terminals, double non_terminals, double gamma,
                               int case_id);

/// Closed-form total hub-to-landline hop distance on the worst-case chain:
/// (|A|/gamma - 1) (|B| + |A|/2). Requires gamma to divide |A|.
long long worst_chain_hub_distance(int terminals, int non_terminals, int gamma);

/// The worst-case chain itself: landline, |B| relays, then the remaining
/// terminals, all obstructions zero, uniform demand, U = gamma * demand.
PlanningInstance build_worst_chain(int terminals, int non_terminals, int gamma,
                                   double demand);

/// Case detection and ratio for a concrete instance.
BoundReport bound_report(const PlanningInstance& inst);

}  // namespace meshplan

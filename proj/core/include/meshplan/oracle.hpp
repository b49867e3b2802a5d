#pragma once

#include <cstdint>
#include <vector>

#include "meshplan/steiner_tc.hpp"

namespace meshplan {

struct OracleResult {
    HeightFunction heights;
    double tower_cost = 0.0;
    std::uint64_t search_space = 0;
    double elapsed_seconds = 0.0;
};

/// Exhaustive minimum over all on-grid terminal height assignments that
/// connect every terminal. Sized for desk-scale checks (about 6 terminals at
/// 6 levels); refuses when the assignment count exceeds max_space and throws
/// InfeasibleError when no assignment connects the terminals.
OracleResult brute_force_steiner_tc(const PlanningInstance& inst,
                                    std::uint64_t max_space = 2'000'000);

/// Reference for the star subroutine: enumerates every subset of the
/// per-component cheapest logical-neighbor representatives. Independent of
/// the greedy code path except for cover / line-of-sight.
StarResult brute_force_star(const PlanningInstance& inst, const HeightFunction& h,
                            const CoverState& cov, int v, double delta);

}  // namespace meshplan

#pragma once

#include <cstdint>

#include "meshplan/model.hpp"

namespace meshplan {

enum class ObstructionModel { Uniform, Hills };

/// Knobs for the deterministic random instance generator. Cost tables are
/// emitted as integer-valued staircases so oracle comparisons stay exact.
struct GenParams {
    std::uint64_t seed = 1;
    int terminals = 5;       // |A|, landline included
    int non_terminals = 2;   // |B|
    double area = 4000.0;    // square side, m
    double demand_min = 1.0; // integer Mbps draws, clamped to U
    double demand_max = 8.0;
    ObstructionModel ob_model = ObstructionModel::Uniform;
    double ob_max = 24.0;
    RadioParams radio{10.0, 2500.0, 0.0, 30.0, 2000.0, 90.0,
                      12.0, 2500.0, 12.0, 10.0};
    double height_step = 1.0;
    double tower_cost_per_m = 10.0;
    double link_unit_cost = 50.0;
    AntennaCosts antenna{50.0, 90.0, 200.0, 30.0};
    int max_attempts = 1000;
};

/// Pseudo-random instance satisfying every instance invariant; feasibility at
/// HTMAX is enforced by rejection. Throws GenerationError after max_attempts.
PlanningInstance generate_instance(const GenParams& params);

}  // namespace meshplan

#pragma once

#include <optional>
#include <string>

#include "meshplan/analysis.hpp"
#include "meshplan/hybrid.hpp"
#include "meshplan/instance_io.hpp"

namespace meshplan {

struct PlanOptions {
    HybridOrder hybrid = HybridOrder::MpThenOmni;
    bool trace = false;
};

/// Everything `plan` emits: the instance digest, the solved heights and tree,
/// the capacity installation, the optional hybrid replacement, the cost and
/// bound reports, and the optional iteration trace.
struct PlanDocument {
    std::string instance_digest;
    SteinerSolution solution;
    CapacityPlan capacity;
    std::optional<HybridPlan> hybrid;
    PowerAssignment power;  // used when no hybrid pass ran
    CostReport costs;
    BoundReport bounds;
    bool with_trace = false;
};

PlanDocument run_plan(const PlanningInstance& inst, const PlanOptions& opts,
                      const std::string& instance_digest = "");

/// Field order is fixed and numbers round-trip, so identical runs serialize
/// byte-identically.
ordered_json plan_to_json(const PlanningInstance& inst, const PlanDocument& doc);

}  // namespace meshplan

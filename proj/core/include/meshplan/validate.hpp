#pragma once

#include <string>
#include <vector>

#include "meshplan/plan.hpp"

namespace meshplan {

/// Independent re-check of a serialized plan against its instance: tree
/// structure and line of sight, grouping and hub rules, flows, copies and
/// conservation, every MP and omni constraint, heights after overrides, cost
/// and bound recomputation. Returns human-readable violations; empty = valid.
std::vector<std::string> validate_plan(const PlanningInstance& inst,
                                       const ordered_json& plan_doc,
                                       const std::string& instance_digest = "");

}  // namespace meshplan

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "meshplan/cnd.hpp"

namespace meshplan {

/// One p2mp sector antenna at `apex`, aimed along apex -> direction, replacing
/// the apex-side p2p antennas of the covered child edges.
struct MPConfig {
    int apex = -1;       // vertex index
    int direction = -1;  // vertex index defining the ray
    double beamwidth = 0.0;  // degrees
    double radius = 0.0;     // meters
    std::vector<int> covered;  // child vertex indices, ascending
};

/// One omnidirectional antenna at `center` replacing the p2p links to
/// `covered`. Members of `subordinate` have no other tree edge; their towers
/// drop to HTOmniSD while the center rises to max(HTOmni, h(center)).
struct OmniConfig {
    int center = -1;
    double radius = 0.0;
    std::vector<int> covered;      // ascending
    std::vector<int> subordinate;  // subset of covered, ascending
};

struct PowerAssignment {
    std::vector<std::pair<int, double>> p2p;  // (tree edge index, power)
    std::vector<double> mp;                   // aligned with HybridPlan::mp
    std::vector<double> omni;                 // aligned with HybridPlan::omni
};

enum class HybridOrder { None, MpOnly, OmniOnly, MpThenOmni, OmniThenMp };

std::string to_string(HybridOrder order);
std::optional<HybridOrder> parse_hybrid_order(const std::string& text);

struct HybridPlan {
    HybridOrder order = HybridOrder::None;
    std::vector<MPConfig> mp;      // adoption order
    std::vector<OmniConfig> omni;  // adoption order
    std::vector<std::pair<int, double>> height_overrides;  // (vertex, new height)
    double cost_delta = 0.0;       // total cost after minus before; <= 0
    PowerAssignment power;

    std::vector<char> replaced_mp;    // per tree edge index
    std::vector<char> replaced_omni;

    HeightFunction apply_overrides(const HeightFunction& h) const;
};

/// Mutable deployment state threaded through the deepest-first passes.
/// Exposed so the per-vertex subroutines can be driven directly in tests.
struct HybridState {
    const PlanningInstance* inst = nullptr;
    const SteinerTree* tree = nullptr;
    const CapacityPlan* cap = nullptr;
    HeightFunction heights;              // current, with prior overrides applied
    std::vector<char> replaced;          // per tree edge index
    std::vector<std::pair<int, double>> omni_discs;  // (center, radius) adopted so far
    std::map<int, std::vector<MPConfig>> mp_at;      // adopted sectors per apex

    static HybridState make(const PlanningInstance& inst, const SteinerTree& tree,
                            const CapacityPlan& cap, const HeightFunction& h);
};

/// Range predicate for MP sectors. Edges incident to the apex test their far
/// endpoint against the sector; other edges test segment-sector intersection
/// (the interference use).
bool sector_covers(const PlanningInstance& inst, const Edge& e, int v, int u,
                   double bw_deg, double rad);

/// Strict disc-overlap predicate; tangent discs do not overlap.
bool omni_overlap(const Point2& u, double rad_u, const Point2& v, double rad_v);

/// Greedy sector selection at one vertex: every remaining child anchors a
/// candidate direction, beamwidth and radius shrink until the cost, capacity
/// and interference constraints hold, and the widest-coverage candidate is
/// adopted until none is left. Adopted configs are registered in the state.
std::vector<MPConfig> mp_ant_replace(HybridState& st, int v);

/// Deepest-first MP pass over all non-leaf vertices.
std::vector<MPConfig> mp_deploy(HybridState& st);

/// Child-set trimming at one vertex per the omni constraints: on disc overlap
/// the farthest child is dropped and the radius retuned; otherwise the
/// highest-flow child outside the subordinate set is dropped. Empty covered
/// set means no adoption. Does not mutate the state.
OmniConfig omni_ant_replace(const HybridState& st, int v);

/// Deepest-first omni pass; adopted discs accumulate and height overrides are
/// applied as the pass proceeds.
std::vector<OmniConfig> omni_deploy(HybridState& st, std::vector<std::pair<int, double>>* overrides);

/// Minimum table power reaching each antenna's farthest covered vertex.
PowerAssignment assign_transmit_power(const PlanningInstance& inst, const SteinerTree& tree,
                                      const HybridPlan& plan);

/// Full replacement pipeline in the requested order, with power assignment
/// and the cost delta re-derived from scratch.
HybridPlan deploy_hybrid(const PlanningInstance& inst, const SteinerTree& tree,
                         const CapacityPlan& cap, const HeightFunction& h,
                         HybridOrder order);

}  // namespace meshplan

#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "meshplan/model.hpp"

namespace meshplan {

/// Tower-cost increment divided by the number of terminal components merged.
/// benefit == 0 encodes +infinity. Comparisons cross-multiply so integer-cost
/// instances compare exactly.
struct CostBenefitRatio {
    double cost = 0.0;
    int benefit = 0;

    bool infinite() const { return benefit == 0; }
};

bool ratio_less(const CostBenefitRatio& a, const CostBenefitRatio& b);
bool ratio_equal(const CostBenefitRatio& a, const CostBenefitRatio& b);

/// How a logical neighbor attaches to the star center: directly over the edge
/// (center, terminal), or through a chain of non-terminal relays whose interior
/// edges are covered by the fixed relay heights.
struct NeighborAttachment {
    int terminal = -1;        // vertex index
    double increment = 0.0;   // height increment at `terminal`
    double cost = 0.0;        // cTower increment at `terminal`
    std::vector<int> relays;  // interior non-terminals, center side first; empty = direct edge
};

/// Output of the per-vertex star subroutine: the best cost-to-benefit ratio
/// for a center at a given height increment and the increments realizing it.
struct StarResult {
    CostBenefitRatio ratio;
    std::vector<std::pair<int, double>> increments;  // (vertex index, height increment)
    std::vector<NeighborAttachment> selected;
};

/// The covered, pruned topology connecting all terminals to the landline,
/// rooted at the landline.
struct SteinerTree {
    int root = -1;
    std::vector<char> in_tree;              // per vertex index
    std::vector<int> parent;                // -1 for root / out-of-tree
    std::vector<int> depth;                 // -1 for out-of-tree
    std::vector<std::vector<int>> children; // ascending
    struct TreeEdge {
        int child = -1;
        int parent = -1;
        int instance_edge = -1;
    };
    std::vector<TreeEdge> edges;

    int edge_index(int u, int v) const;  // -1 if (u,v) is not a tree edge
    std::vector<int> path_to_root(int v) const;
    std::vector<int> vertex_list() const;
    int degree(int v) const;

    std::map<std::pair<int, int>, int> edge_lookup;  // normalized (min,max) -> index
    void build_lookup();
};

struct TraceEntry {
    double cost = 0.0;   // applied tower-cost increment
    int benefit = 0;     // realized component reduction
    int phi_before = 0;
    int phi_after = 0;
};

struct SteinerSolution {
    HeightFunction heights;
    SteinerTree tree;
    std::vector<TraceEntry> trace;
};

/// Smallest on-grid increment beta >= 0 at the raised endpoint such that
/// fixed_side_height + (raised_height + beta) >= 2 * ob(e). nullopt when the
/// required height would exceed HTMAX.
std::optional<double> min_increment_to_cover(const PlanningInstance& inst,
                                             const Edge& e, double fixed_side_height,
                                             double raised_side_height);

/// All terminals outside v's component reachable directly or through covered
/// non-terminal relays, each with its cheapest attachment: the smallest
/// feasible increment over the direct edge and every relay path (ties prefer
/// the direct edge, then fewer hops, then the smallest interior id sequence).
std::vector<NeighborAttachment> logical_neighbors(const PlanningInstance& inst,
                                                  const HeightFunction& h,
                                                  const CoverState& cov, int v,
                                                  double delta);

/// Best relay attachment from v to terminal u under increment delta at v.
/// Throws InconsistencyError when u is not reachable through relays.
NeighborAttachment best_relay_path(const PlanningInstance& inst, const HeightFunction& h,
                                   int v, double delta, int u);

/// One star evaluation: per-component cheapest representatives sorted by cost
/// and scanned by prefix for the minimizing k.
StarResult star_steiner_tc(const PlanningInstance& inst, const HeightFunction& h,
                           const CoverState& cov, int v, double delta);

/// Greedy loop: doubling height increments over all terminals, apply the
/// globally best ratio, repeat until one terminal component remains.
SteinerSolution steiner_tc_solve(const PlanningInstance& inst);

/// BFS tree of the covered terminal component rooted at the landline, with
/// non-terminal leaves pruned away. Requires phi == 1.
SteinerTree extract_steiner_tree(const PlanningInstance& inst, const CoverState& cov);

/// Doubling increment set for a terminal at height `current`:
/// {step, 2 step, 4 step, ...} capped by HTMAX - current, plus the cap itself.
std::vector<double> doubling_deltas(const PlanningInstance& inst, double current);

}  // namespace meshplan

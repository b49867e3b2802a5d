#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meshplan/errors.hpp"
#include "meshplan/geometry.hpp"

namespace meshplan {

enum class VertexKind { Terminal, NonTerminal, Landline };

/// A site in the planning area. Terminals (and the landline) get towers whose
/// heights the solver decides; non-terminals carry pre-existing towers of
/// fixed height and zero demand.
struct Vertex {
    int id = -1;
    Point2 pos;
    VertexKind kind = VertexKind::Terminal;
    double demand = 0.0;        // Mbps; 0 for non-terminals
    double fixed_height = 0.0;  // meters; meaningful only for non-terminals

    bool is_terminal() const { return kind != VertexKind::NonTerminal; }
};

/// Candidate p2p link. `ob` is the normalized obstruction height at the
/// midpoint; the link has line of sight iff the endpoint tower heights sum to
/// at least twice `ob`.
struct Edge {
    int u = -1;  // vertex index (not id)
    int v = -1;
    double ob = 0.0;
};

struct RadioParams {
    double U = 0.0;         // p2p / p2mp link capacity, Mbps
    double R = 0.0;         // max p2p distance, m
    double HTMIN = 0.0;     // tower height bounds, m
    double HTMAX = 0.0;
    double R_MP = 0.0;      // max MP distance, m (<= R)
    double BWMAX = 0.0;     // max MP beamwidth, degrees
    double U_Omni = 0.0;    // omni hyperlink capacity, Mbps
    double R_Omni = 0.0;    // max omni distance, m
    double HTOmni = 0.0;    // fixed omni center tower height, m
    double HTOmniSD = 0.0;  // fixed subordinate-antenna tower height, m
};

/// Staircase cost of a tower as a function of height: the cost of the largest
/// breakpoint height not exceeding the query.
class TowerCostTable {
public:
    TowerCostTable() = default;
    explicit TowerCostTable(std::vector<std::pair<double, double>> breakpoints)
        : breakpoints_(std::move(breakpoints)) {}

    double operator()(double height) const;
    const std::vector<std::pair<double, double>>& breakpoints() const {
        return breakpoints_;
    }
    bool empty() const { return breakpoints_.empty(); }

private:
    std::vector<std::pair<double, double>> breakpoints_;  // (height, cost) ascending
};

/// Cost of installing k parallel link copies on one edge. Linear in the unit
/// cost unless an explicit per-count table overrides it.
class LinkCostTable {
public:
    LinkCostTable() = default;
    explicit LinkCostTable(double unit) : unit_(unit) {}
    explicit LinkCostTable(std::vector<double> table) : table_(std::move(table)) {}

    double operator()(int copies) const;
    double unit() const { return unit_; }
    const std::vector<double>& table() const { return table_; }
    bool has_table() const { return !table_.empty(); }

private:
    double unit_ = 0.0;
    std::vector<double> table_;  // cost for 1, 2, ... copies
};

struct AntennaCosts {
    double pp = 0.0;
    double mp = 0.0;
    double omni = 0.0;
    double omni_sd = 0.0;
};

struct CostTables {
    TowerCostTable tower;
    LinkCostTable link;
    AntennaCosts antenna;
};

/// Monotone distance -> transmit power table: the assigned power is the first
/// level whose reach covers the required distance.
struct PowerTable {
    std::vector<std::pair<double, double>> levels;  // (max distance m, power) ascending

    double level_for(double distance) const;
    bool empty() const { return levels.empty(); }
};

class PlanningInstance {
public:
    std::vector<Vertex> vertices;  // sorted by id after finalize()
    std::vector<Edge> edges;
    int landline = -1;  // vertex index after finalize()
    RadioParams radio;
    CostTables costs;
    double height_step = 1.0;
    PowerTable power;

    /// Sorts vertices by id, remaps edge endpoints and the landline from ids
    /// to indices, and builds the adjacency. Must be called once after the
    /// raw fields are filled in (parse/generate do this).
    void finalize();

    /// Checks every instance invariant; throws ValidationError listing all
    /// violations.
    void validate() const;

    int size() const { return static_cast<int>(vertices.size()); }
    int index_of(int id) const;
    int id_of(int index) const { return vertices[index].id; }
    bool is_terminal(int index) const { return vertices[index].is_terminal(); }
    int terminal_count() const;

    /// Neighbors of a vertex as (edge index, other endpoint index) pairs,
    /// ordered by the other endpoint.
    const std::vector<std::pair<int, int>>& neighbors(int index) const {
        return adjacency_[index];
    }
    /// Edge index for an unordered vertex pair, or -1.
    int edge_between(int u, int v) const;

private:
    std::vector<std::vector<std::pair<int, int>>> adjacency_;
    std::map<std::pair<int, int>, int> edge_index_;
    std::map<int, int> id_to_index_;
    bool finalized_ = false;
};

/// Per-vertex tower heights, indexed like instance.vertices. The SteinerTC
/// decision variable: terminals move on the height grid, non-terminals are
/// pinned to their fixed heights.
using HeightFunction = std::vector<double>;

HeightFunction initial_heights(const PlanningInstance& inst);

/// Edges covered under a height function plus the component structure of the
/// covered subgraph. `phi` counts components that contain a terminal.
struct CoverState {
    std::vector<char> edge_covered;  // per edge index
    std::vector<int> component;      // per vertex index, union-find root
    int phi = 0;

    bool same_component(int u, int v) const { return component[u] == component[v]; }
};

bool los_covered(const PlanningInstance& inst, const Edge& e, const HeightFunction& h);
bool los_covered(const PlanningInstance& inst, int edge_index, const HeightFunction& h);

CoverState cover(const PlanningInstance& inst, const HeightFunction& h);

struct CostReport {
    double tower = 0.0;
    double link = 0.0;
    double antenna = 0.0;
    double total = 0.0;
};

// Forward declarations; definitions in steiner_tc.hpp / cnd.hpp / hybrid.hpp.
struct SteinerTree;
struct CapacityPlan;
struct HybridPlan;

/// Full cost accounting: tower cost over terminals, link installation cost
/// per installed copies, and antenna hardware. Hybrid height overrides and
/// hyperlink replacements are applied when a hybrid plan is given.
CostReport total_cost(const PlanningInstance& inst, const SteinerTree& tree,
                      const CapacityPlan& cap, const HeightFunction& h,
                      const HybridPlan* hybrid = nullptr);

}  // namespace meshplan

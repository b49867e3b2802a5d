#pragma once

// Small builders for hand-laid instances used across the test files.

#include <utility>
#include <vector>

#include "meshplan/model.hpp"

namespace meshplan::test {

struct VertexSpec {
    int id;
    double x, y;
    VertexKind kind;
    double demand = 0.0;
    double fixed_height = 0.0;
};

struct EdgeSpec {
    int u, v;
    double ob;
};

inline RadioParams default_radio() {
    return {10.0, 10000.0, 0.0, 30.0, 8000.0, 90.0, 12.0, 10000.0, 12.0, 10.0};
}

inline CostTables linear_costs(double per_m = 1.0, double max_h = 30.0) {
    CostTables c;
    std::vector<std::pair<double, double>> bp;
    for (int k = 0; k <= static_cast<int>(max_h); ++k)
        bp.emplace_back(k, per_m * k);
    c.tower = TowerCostTable(std::move(bp));
    c.link = LinkCostTable(50.0);
    c.antenna = {50.0, 90.0, 200.0, 30.0};
    return c;
}

inline PlanningInstance make_instance(const std::vector<VertexSpec>& vs,
                                      const std::vector<EdgeSpec>& es,
                                      int landline_id,
                                      RadioParams radio = default_radio(),
                                      CostTables costs = linear_costs(),
                                      double height_step = 1.0) {
    PlanningInstance inst;
    for (const auto& v : vs) {
        Vertex vert;
        vert.id = v.id;
        vert.pos = {v.x, v.y};
        vert.kind = v.kind;
        vert.demand = v.demand;
        vert.fixed_height = v.fixed_height;
        inst.vertices.push_back(vert);
    }
    for (const auto& e : es) inst.edges.push_back({e.u, e.v, e.ob});
    inst.landline = landline_id;
    inst.radio = radio;
    inst.costs = std::move(costs);
    inst.height_step = height_step;
    inst.finalize();
    return inst;
}

}  // namespace meshplan::test

#include "meshplan/generator.hpp"

#include <algorithm>
#include <cmath>

#include "meshplan/rng.hpp"

namespace meshplan {

namespace {

double round_to(double value, double grid) {
    return std::round(value / grid) * grid;
}

PlanningInstance attempt(const GenParams& p, Rng& rng) {
    PlanningInstance inst;
    const int n = p.terminals + p.non_terminals;

    for (int i = 0; i < n; ++i) {
        Vertex v;
        v.id = i;
        v.pos = {rng.uniform(0.0, p.area), rng.uniform(0.0, p.area)};
        if (i == 0) {
            v.kind = VertexKind::Landline;
            v.demand = 0.0;
        } else if (i < p.terminals) {
            v.kind = VertexKind::Terminal;
            const double lo = std::max(1.0, p.demand_min);
            const double hi = std::min(p.radio.U, p.demand_max);
            v.demand = static_cast<double>(
                rng.uniform_int(static_cast<long long>(lo), static_cast<long long>(hi)));
        } else {
            v.kind = VertexKind::NonTerminal;
            const auto levels = static_cast<long long>(
                std::floor((p.radio.HTMAX - p.radio.HTMIN) / p.height_step + 1e-9));
            v.fixed_height =
                p.radio.HTMIN + p.height_step * rng.uniform_int(0, levels);
        }
        inst.vertices.push_back(v);
    }

    Point2 hill{rng.uniform(0.0, p.area), rng.uniform(0.0, p.area)};
    const double sigma = p.area / 3.0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const double d = dist(inst.vertices[u].pos, inst.vertices[v].pos);
            if (d > p.radio.R) continue;
            double ob = 0.0;
            if (p.ob_model == ObstructionModel::Uniform) {
                ob = rng.uniform(0.0, p.ob_max);
            } else {
                const Point2 mid{(inst.vertices[u].pos.x + inst.vertices[v].pos.x) / 2.0,
                                 (inst.vertices[u].pos.y + inst.vertices[v].pos.y) / 2.0};
                const double r = dist(mid, hill);
                ob = p.ob_max * std::exp(-(r * r) / (2.0 * sigma * sigma)) +
                     rng.uniform(0.0, p.ob_max * 0.2);
            }
            inst.edges.push_back({u, v, round_to(ob, 0.5)});
        }
    }

    inst.landline = 0;
    inst.radio = p.radio;
    inst.height_step = p.height_step;

    std::vector<std::pair<double, double>> bp;
    const auto levels = static_cast<int>(
        std::floor((p.radio.HTMAX - p.radio.HTMIN) / p.height_step + 1e-9));
    const double floor_h = std::min({0.0, p.radio.HTMIN});
    if (floor_h < p.radio.HTMIN)
        bp.emplace_back(floor_h, 0.0);
    for (int k = 0; k <= levels; ++k) {
        const double h = p.radio.HTMIN + k * p.height_step;
        bp.emplace_back(h, std::round(h * p.tower_cost_per_m));
    }
    // The omni heights may sit off the terminal grid; give them breakpoints
    // so staircase lookups stay integer-valued.
    for (double h : {p.radio.HTOmniSD, p.radio.HTOmni}) {
        bool present = false;
        for (const auto& [bh, bc] : bp)
            if (bh == h) present = true;
        if (!present) bp.emplace_back(h, std::round(h * p.tower_cost_per_m));
    }
    std::sort(bp.begin(), bp.end());
    inst.costs.tower = TowerCostTable(std::move(bp));
    inst.costs.link = LinkCostTable(p.link_unit_cost);
    inst.costs.antenna = p.antenna;

    inst.finalize();
    inst.validate();
    return inst;
}

}  // namespace

PlanningInstance generate_instance(const GenParams& params) {
    if (params.terminals < 2) throw GenerationError("need at least two terminals");
    if (params.demand_max < 1 || params.demand_min > params.radio.U)
        throw GenerationError("demand range incompatible with link capacity");

    Rng rng(params.seed);
    for (int attempt_no = 0; attempt_no < params.max_attempts; ++attempt_no) {
        try {
            return attempt(params, rng);
        } catch (const ValidationError&) {
            // infeasible draw; reroll
        }
    }
    throw GenerationError("no feasible instance after " +
                          std::to_string(params.max_attempts) + " attempts");
}

}  // namespace meshplan

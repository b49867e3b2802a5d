#include "meshplan/analysis.hpp"

#include <cmath>

namespace meshplan {

double performance_ratio_bound(double terminals, double non_terminals, double gamma,
                               int case_id) {
    if (terminals < 2) throw ValidationError("ratio bound requires |A| >= 2");
    const double A = terminals;
    const double B = non_terminals;
    switch (case_id) {
        case 1:
            return 1.0 + 2.0 * std::log(A) + B / A;
        case 2:
        case 3:
            if (!(gamma > 0)) throw ValidationError("ratio bound requires gamma > 0");
            return 3.0 + std::log(A) + B / A + (A + 2.0 * B) / gamma;
        default:
            throw ValidationError("invalid performance-ratio case id");
    }
}

long long worst_chain_hub_distance(int terminals, int non_terminals, int gamma) {
    if (terminals <= 0 || non_terminals < 0 || gamma <= 0)
        throw ValidationError("worst-chain parameters must be positive");
    if (terminals % gamma != 0)
        throw ValidationError("gamma must divide |A| for the closed-form chain");
    const long long m = terminals / gamma;
    // (m - 1)(|B| + |A|/2) with the division kept exact.
    return (m - 1) * (2LL * non_terminals + terminals) / 2;
}

PlanningInstance build_worst_chain(int terminals, int non_terminals, int gamma,
                                   double demand) {
    if (terminals < 2 || non_terminals < 0 || gamma <= 0 || demand <= 0)
        throw ValidationError("worst-chain parameters out of range");

    PlanningInstance inst;
    const int n = terminals + non_terminals;
    const double spacing = 1000.0;

    for (int i = 0; i < n; ++i) {
        Vertex v;
        v.id = i;
        v.pos = {spacing * i, 0.0};
        if (i == 0) {
            v.kind = VertexKind::Landline;
            v.demand = 0.0;
        } else if (i <= non_terminals) {
            v.kind = VertexKind::NonTerminal;
            v.fixed_height = 0.0;
        } else {
            v.kind = VertexKind::Terminal;
            v.demand = demand;
        }
        inst.vertices.push_back(v);
    }
    for (int i = 0; i + 1 < n; ++i) inst.edges.push_back({i, i + 1, 0.0});

    inst.landline = 0;
    inst.radio = {gamma * demand, 1500.0, 0.0, 30.0, 1200.0, 90.0,
                  gamma * demand, 1500.0, 12.0, 10.0};
    inst.height_step = 1.0;

    std::vector<std::pair<double, double>> bp;
    for (int k = 0; k <= 30; ++k) bp.emplace_back(k, 10.0 * k);
    inst.costs.tower = TowerCostTable(std::move(bp));
    inst.costs.link = LinkCostTable(50.0);
    inst.costs.antenna = {50.0, 90.0, 200.0, 30.0};

    inst.finalize();
    inst.validate();
    return inst;
}

BoundReport bound_report(const PlanningInstance& inst) {
    BoundReport rep;
    double total = 0.0, max_dem = 0.0;
    bool uniform = true;
    double first = -1.0;
    for (int i = 0; i < inst.size(); ++i) {
        const auto& v = inst.vertices[i];
        if (v.is_terminal()) {
            ++rep.terminals;
            total += v.demand;
            max_dem = std::max(max_dem, v.demand);
            if (i != inst.landline) {
                if (first < 0)
                    first = v.demand;
                else if (v.demand != first)
                    uniform = false;
            }
        } else {
            ++rep.non_terminals;
        }
    }
    rep.gamma = max_dem > 0 ? inst.radio.U / max_dem : 0.0;
    if (total <= inst.radio.U)
        rep.case_id = 1;
    else
        rep.case_id = uniform ? 2 : 3;
    rep.ratio = performance_ratio_bound(rep.terminals, rep.non_terminals, rep.gamma,
                                        rep.case_id);
    return rep;
}

}  // namespace meshplan

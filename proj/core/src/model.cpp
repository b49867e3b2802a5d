#include "meshplan/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "meshplan/cnd.hpp"
#include "meshplan/hybrid.hpp"
#include "meshplan/steiner_tc.hpp"
#include "meshplan/union_find.hpp"

namespace meshplan {

double TowerCostTable::operator()(double height) const {
    if (breakpoints_.empty())
        throw ConfigError("tower cost table is empty");
    if (height < breakpoints_.front().first)
        throw ConfigError("tower cost queried below the first breakpoint: h=" +
                          std::to_string(height));
    double cost = breakpoints_.front().second;
    for (const auto& [h, c] : breakpoints_) {
        if (h > height) break;
        cost = c;
    }
    return cost;
}

double LinkCostTable::operator()(int copies) const {
    if (copies < 0) throw ConfigError("negative link copy count");
    if (copies == 0) return 0.0;
    if (table_.empty()) return unit_ * copies;
    if (copies > static_cast<int>(table_.size()))
        throw ConfigError("link cost table has no entry for " + std::to_string(copies) +
                          " copies");
    return table_[static_cast<std::size_t>(copies) - 1];
}

double PowerTable::level_for(double distance) const {
    for (const auto& [max_dist, power] : levels) {
        if (distance <= max_dist) return power;
    }
    throw ConfigError("power table does not reach distance " + std::to_string(distance));
}

void PlanningInstance::finalize() {
    // Vertices arrive keyed by id; sort so index order equals id order, which
    // every deterministic tie-break in the solvers relies on.
    std::sort(vertices.begin(), vertices.end(),
              [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
    id_to_index_.clear();
    for (int i = 0; i < size(); ++i) {
        if (!id_to_index_.emplace(vertices[i].id, i).second)
            throw ValidationError("duplicate vertex id " + std::to_string(vertices[i].id));
    }
    if (!finalized_) {
        // Raw edges and landline reference ids; remap them to indices once.
        for (auto& e : edges) {
            e.u = index_of(e.u);
            e.v = index_of(e.v);
        }
        landline = index_of(landline);
    }
    adjacency_.assign(size(), {});
    edge_index_.clear();
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        auto& e = edges[i];
        if (e.u > e.v) std::swap(e.u, e.v);
        adjacency_[e.u].emplace_back(i, e.v);
        adjacency_[e.v].emplace_back(i, e.u);
        edge_index_[{e.u, e.v}] = i;
    }
    for (auto& nbrs : adjacency_)
        std::sort(nbrs.begin(), nbrs.end(),
                  [](const auto& a, const auto& b) { return a.second < b.second; });
    finalized_ = true;

    if (power.empty()) {
        // Default 4-level table over the widest radio reach.
        const double reach = std::max(radio.R, radio.R_Omni);
        for (int i = 1; i <= 4; ++i)
            power.levels.emplace_back(reach * i / 4.0, static_cast<double>(i));
    }
}

int PlanningInstance::index_of(int id) const {
    auto it = id_to_index_.find(id);
    if (it == id_to_index_.end())
        throw InconsistencyError("unknown vertex id " + std::to_string(id));
    return it->second;
}

int PlanningInstance::terminal_count() const {
    int n = 0;
    for (const auto& v : vertices) n += v.is_terminal() ? 1 : 0;
    return n;
}

int PlanningInstance::edge_between(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = edge_index_.find({u, v});
    return it == edge_index_.end() ? -1 : it->second;
}

namespace {

bool close_to_grid(double value, double origin, double step) {
    const double k = std::round((value - origin) / step);
    return std::abs(origin + k * step - value) <= 1e-6;
}

}  // namespace

void PlanningInstance::validate() const {
    std::vector<std::string> errs;
    const auto& r = radio;

    auto positive = [&](double v, const char* name) {
        if (!(v > 0)) errs.push_back(std::string(name) + " must be positive");
    };
    positive(r.U, "U");
    positive(r.R, "R");
    positive(r.HTMAX, "HTMAX");
    positive(r.R_MP, "R_MP");
    positive(r.BWMAX, "BWMAX");
    positive(r.U_Omni, "U_Omni");
    positive(r.R_Omni, "R_Omni");
    positive(r.HTOmni, "HTOmni");
    positive(r.HTOmniSD, "HTOmniSD");
    if (r.HTMIN < 0) errs.push_back("HTMIN must be non-negative");
    if (r.HTMIN > r.HTMAX) errs.push_back("HTMIN exceeds HTMAX");
    if (r.R_MP > r.R) errs.push_back("R_MP exceeds R");
    if (!(height_step > 0)) errs.push_back("height_step must be positive");
    if (height_step > 0 && !close_to_grid(r.HTMAX, r.HTMIN, height_step))
        errs.push_back("HTMAX - HTMIN must be a multiple of height_step");

    int landlines = 0;
    for (const auto& v : vertices) {
        switch (v.kind) {
            case VertexKind::Landline:
                ++landlines;
                if (v.demand < 0) errs.push_back("landline demand must be >= 0");
                break;
            case VertexKind::Terminal:
                if (!(v.demand > 0))
                    errs.push_back("terminal " + std::to_string(v.id) +
                                   " must have positive demand");
                break;
            case VertexKind::NonTerminal:
                if (v.demand != 0)
                    errs.push_back("non-terminal " + std::to_string(v.id) +
                                   " must have zero demand");
                if (v.fixed_height < r.HTMIN - 1e-9 || v.fixed_height > r.HTMAX + 1e-9)
                    errs.push_back("non-terminal " + std::to_string(v.id) +
                                   " fixed height outside [HTMIN, HTMAX]");
                break;
        }
        if (v.is_terminal() && v.demand > r.U + 1e-9)
            errs.push_back("terminal " + std::to_string(v.id) + " demand exceeds U");
    }
    if (landlines != 1) errs.push_back("instance must contain exactly one landline");
    if (terminal_count() < 2) errs.push_back("at least two terminals required");
    if (landline >= 0 && landline < size() &&
        vertices[landline].kind != VertexKind::Landline)
        errs.push_back("landline field does not point at the landline vertex");

    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
        if (e.u == e.v) errs.push_back("self-loop edge");
        if (e.ob < 0) errs.push_back("negative obstruction height");
        if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second)
            errs.push_back("duplicate edge");
        const double d = dist(vertices[e.u].pos, vertices[e.v].pos);
        if (d > r.R + 1e-6)
            errs.push_back("edge (" + std::to_string(vertices[e.u].id) + "," +
                           std::to_string(vertices[e.v].id) + ") longer than R");
    }

    if (costs.tower.empty()) {
        errs.push_back("tower cost table is empty");
    } else {
        const auto& bp = costs.tower.breakpoints();
        const double needed =
            std::min({r.HTMIN, r.HTOmni, r.HTOmniSD});
        if (bp.front().first > needed + 1e-9)
            errs.push_back("tower cost table does not cover the lowest queried height");
        for (std::size_t i = 1; i < bp.size(); ++i) {
            if (bp[i].first <= bp[i - 1].first)
                errs.push_back("tower cost breakpoints not strictly ascending");
            if (bp[i].second < bp[i - 1].second)
                errs.push_back("tower cost table not monotone non-decreasing");
        }
        for (const auto& [h, c] : bp)
            if (c < 0) errs.push_back("negative tower cost");
    }

    // Feasibility: terminals must be connectable with every terminal tower
    // raised to HTMAX.
    if (errs.empty()) {
        HeightFunction hmax(size());
        for (int i = 0; i < size(); ++i)
            hmax[i] = vertices[i].is_terminal() ? r.HTMAX : vertices[i].fixed_height;
        const CoverState cs = cover(*this, hmax);
        if (cs.phi != 1)
            errs.push_back("instance infeasible: terminals not connectable at HTMAX");
    }

    if (!errs.empty()) {
        std::ostringstream out;
        out << "invalid instance:";
        for (const auto& m : errs) out << "\n  - " << m;
        throw ValidationError(out.str());
    }
}

HeightFunction initial_heights(const PlanningInstance& inst) {
    HeightFunction h(inst.size());
    for (int i = 0; i < inst.size(); ++i)
        h[i] = inst.vertices[i].is_terminal() ? inst.radio.HTMIN
                                              : inst.vertices[i].fixed_height;
    return h;
}

bool los_covered(const PlanningInstance& inst, const Edge& e, const HeightFunction& h) {
    if (e.u < 0 || e.u >= inst.size() || e.v < 0 || e.v >= inst.size())
        throw InconsistencyError("edge endpoint outside instance");
    return h[e.u] + h[e.v] >= 2.0 * e.ob;
}

bool los_covered(const PlanningInstance& inst, int edge_index, const HeightFunction& h) {
    return los_covered(inst, inst.edges[edge_index], h);
}

CoverState cover(const PlanningInstance& inst, const HeightFunction& h) {
    CoverState cs;
    cs.edge_covered.assign(inst.edges.size(), 0);
    UnionFind uf(inst.size());
    for (int i = 0; i < static_cast<int>(inst.edges.size()); ++i) {
        if (los_covered(inst, inst.edges[i], h)) {
            cs.edge_covered[i] = 1;
            uf.unite(inst.edges[i].u, inst.edges[i].v);
        }
    }
    cs.component.resize(inst.size());
    std::set<int> terminal_roots;
    for (int i = 0; i < inst.size(); ++i) {
        cs.component[i] = uf.find(i);
        if (inst.is_terminal(i)) terminal_roots.insert(cs.component[i]);
    }
    cs.phi = static_cast<int>(terminal_roots.size());
    return cs;
}

CostReport total_cost(const PlanningInstance& inst, const SteinerTree& tree,
                      const CapacityPlan& cap, const HeightFunction& h,
                      const HybridPlan* hybrid) {
    if (cap.flow.size() != tree.edges.size() || cap.copies.size() != tree.edges.size())
        throw InconsistencyError("capacity plan does not match the tree edge set");

    HeightFunction eff = hybrid ? hybrid->apply_overrides(h) : h;

    CostReport rep;
    for (int i = 0; i < inst.size(); ++i)
        if (inst.is_terminal(i)) rep.tower += inst.costs.tower(eff[i]);

    const double pp = inst.costs.antenna.pp;
    for (std::size_t i = 0; i < tree.edges.size(); ++i) {
        rep.link += inst.costs.link(cap.copies[i]);
        rep.antenna += 2.0 * pp * cap.copies[i];
    }

    if (hybrid) {
        for (const auto& cfg : hybrid->mp) {
            const auto n = static_cast<double>(cfg.covered.size());
            rep.antenna += inst.costs.antenna.mp - pp * n;
        }
        for (const auto& cfg : hybrid->omni) {
            const auto n = static_cast<double>(cfg.covered.size());
            rep.antenna += inst.costs.antenna.omni + inst.costs.antenna.omni_sd * n -
                           2.0 * pp * n;
        }
    }

    rep.total = rep.tower + rep.link + rep.antenna;
    return rep;
}

}  // namespace meshplan

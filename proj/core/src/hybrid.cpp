#include "meshplan/hybrid.hpp"

#include <algorithm>
#include <cmath>

namespace meshplan {

std::string to_string(HybridOrder order) {
    switch (order) {
        case HybridOrder::None: return "none";
        case HybridOrder::MpOnly: return "mp";
        case HybridOrder::OmniOnly: return "omni";
        case HybridOrder::MpThenOmni: return "mp,omni";
        case HybridOrder::OmniThenMp: return "omni,mp";
    }
    return "none";
}

std::optional<HybridOrder> parse_hybrid_order(const std::string& text) {
    if (text == "none") return HybridOrder::None;
    if (text == "mp") return HybridOrder::MpOnly;
    if (text == "omni") return HybridOrder::OmniOnly;
    if (text == "mp,omni") return HybridOrder::MpThenOmni;
    if (text == "omni,mp") return HybridOrder::OmniThenMp;
    return std::nullopt;
}

HeightFunction HybridPlan::apply_overrides(const HeightFunction& h) const {
    HeightFunction out = h;
    for (const auto& [v, height] : height_overrides) out[v] = height;
    return out;
}

HybridState HybridState::make(const PlanningInstance& inst, const SteinerTree& tree,
                              const CapacityPlan& cap, const HeightFunction& h) {
    HybridState st;
    st.inst = &inst;
    st.tree = &tree;
    st.cap = &cap;
    st.heights = h;
    st.replaced.assign(tree.edges.size(), 0);
    return st;
}

bool sector_covers(const PlanningInstance& inst, const Edge& e, int v, int u,
                   double bw_deg, double rad) {
    if (u == v) throw InconsistencyError("degenerate sector direction");
    const Point2& c = inst.vertices[v].pos;
    const Point2& dir = inst.vertices[u].pos;
    if (e.u == v || e.v == v) {
        const int x = e.u == v ? e.v : e.u;
        const Point2& px = inst.vertices[x].pos;
        if (dist(c, px) > rad) return false;
        return angle_deg(c, dir, px) <= bw_deg / 2.0;
    }
    return segment_intersects_sector(inst.vertices[e.u].pos, inst.vertices[e.v].pos, c,
                                     dir, bw_deg, rad);
}

bool omni_overlap(const Point2& u, double rad_u, const Point2& v, double rad_v) {
    return dist(u, v) < rad_u + rad_v;
}

namespace {

// Child edge is replaceable when it carries exactly one link copy and no
// earlier hyperlink claimed it.
bool eligible_child(const HybridState& st, int v, int x) {
    const int te = st.tree->edge_index(v, x);
    return te != -1 && st.cap->copies[te] == 1 && !st.replaced[te];
}

double child_flow(const HybridState& st, int v, int x) {
    return st.cap->flow[st.tree->edge_index(v, x)];
}

double child_angle(const HybridState& st, int v, int u, int x) {
    const auto& vs = st.inst->vertices;
    return angle_deg(vs[v].pos, vs[u].pos, vs[x].pos);
}

double child_dist(const HybridState& st, int v, int x) {
    return dist(st.inst->vertices[v].pos, st.inst->vertices[x].pos);
}

std::vector<int> sector_members(const HybridState& st, int v, int u, double bw,
                                double rad) {
    std::vector<int> X;
    for (int x : st.tree->children[v]) {
        if (!eligible_child(st, v, x)) continue;
        const int eidx = st.tree->edges[st.tree->edge_index(v, x)].instance_edge;
        if (sector_covers(*st.inst, st.inst->edges[eidx], v, u, bw, rad))
            X.push_back(x);
    }
    return X;
}

bool mp_constraints_ok(const HybridState& st, int v, int u, double bw, double rad,
                       const std::vector<int>& X) {
    if (X.empty()) return false;
    const auto& ant = st.inst->costs.antenna;
    if (!(ant.mp < ant.pp * static_cast<double>(X.size()))) return false;

    double flow_sum = 0.0;
    for (int x : X) flow_sum += child_flow(st, v, x);
    if (flow_sum > st.inst->radio.U) return false;

    // Interference: the sector must touch no tree edge outside its covered set.
    for (int te = 0; te < static_cast<int>(st.tree->edges.size()); ++te) {
        const auto& edge = st.tree->edges[te];
        const bool covered = (edge.parent == v || edge.child == v) &&
                             std::find(X.begin(), X.end(),
                                       edge.parent == v ? edge.child : edge.parent) !=
                                 X.end();
        if (covered) continue;
        if (sector_covers(*st.inst, st.inst->edges[edge.instance_edge], v, u, bw, rad))
            return false;
    }

    // Sectors already adopted at v must stay angularly disjoint from this one.
    auto it = st.mp_at.find(v);
    if (it != st.mp_at.end()) {
        for (const auto& cfg : it->second) {
            const double between = child_angle(st, v, u, cfg.direction);
            if (between <= (bw + cfg.beamwidth) / 2.0) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<MPConfig> mp_ant_replace(HybridState& st, int v) {
    const auto& radio = st.inst->radio;
    std::vector<MPConfig> adopted;

    std::vector<int> S = st.tree->children[v];  // direction candidates
    bool end = false;
    while (!S.empty() && !end) {
        struct Candidate {
            int dir;
            double bw, rad;
            std::vector<int> X;
        };
        std::vector<Candidate> found;

        for (int u : S) {
            if (child_dist(st, v, u) == 0.0) continue;  // no usable direction ray
            double bw = radio.BWMAX;
            double rad = radio.R_MP;
            std::vector<int> X = sector_members(st, v, u, bw, rad);
            while (!mp_constraints_ok(st, v, u, bw, rad, X) &&
                   static_cast<int>(X.size()) > 1) {
                // Drop the boundary vertex: the widest-angle member leaves and
                // the beamwidth closes onto the widest survivor.
                double worst = 0.0;
                for (int x : X) worst = std::max(worst, child_angle(st, v, u, x));
                double next_bw = -1.0;
                for (int x : X) {
                    const double a = child_angle(st, v, u, x);
                    if (a < worst) next_bw = std::max(next_bw, a);
                }
                if (next_bw < 0.0) {
                    X.clear();
                    break;
                }
                bw = 2.0 * next_bw;
                X = sector_members(st, v, u, bw, rad);
                if (X.empty()) break;
                double far = 0.0;
                for (int x : X) far = std::max(far, child_dist(st, v, x));
                rad = far;
            }
            if (static_cast<int>(X.size()) > 1 && mp_constraints_ok(st, v, u, bw, rad, X))
                found.push_back({u, bw, rad, std::move(X)});
        }

        if (found.empty()) {
            end = true;
            break;
        }
        // Best coverage wins; S is ascending, so the first maximum has the
        // smallest direction id.
        const Candidate* best = &found.front();
        for (const auto& c : found)
            if (c.X.size() > best->X.size()) best = &c;

        MPConfig cfg;
        cfg.apex = v;
        cfg.direction = best->dir;
        cfg.beamwidth = best->bw;
        cfg.radius = best->rad;
        cfg.covered = best->X;
        std::sort(cfg.covered.begin(), cfg.covered.end());
        for (int x : cfg.covered) st.replaced[st.tree->edge_index(v, x)] = 1;
        st.mp_at[v].push_back(cfg);
        adopted.push_back(cfg);

        std::erase_if(S, [&](int x) {
            return std::find(cfg.covered.begin(), cfg.covered.end(), x) != cfg.covered.end();
        });
    }
    return adopted;
}

namespace {

std::vector<int> deepest_first_internal(const SteinerTree& tree) {
    std::vector<int> vs;
    for (int v : tree.vertex_list())
        if (!tree.children[v].empty()) vs.push_back(v);
    std::sort(vs.begin(), vs.end(), [&](int a, int b) {
        if (tree.depth[a] != tree.depth[b]) return tree.depth[a] > tree.depth[b];
        return a < b;
    });
    return vs;
}

}  // namespace

std::vector<MPConfig> mp_deploy(HybridState& st) {
    std::vector<MPConfig> all;
    for (int v : deepest_first_internal(*st.tree)) {
        auto configs = mp_ant_replace(st, v);
        all.insert(all.end(), configs.begin(), configs.end());
    }
    return all;
}

namespace {

std::vector<int> subordinate_set(const HybridState& st, const std::vector<int>& X) {
    std::vector<int> sd;
    for (int x : X)
        if (st.tree->degree(x) == 1) sd.push_back(x);
    return sd;
}

bool omni_cost_ok(const HybridState& st, int v, const std::vector<int>& X,
                  const std::vector<int>& sd) {
    const auto& costs = st.inst->costs;
    const auto& radio = st.inst->radio;
    const auto n = static_cast<double>(X.size());
    const double hv = st.heights[v];
    double lhs = costs.antenna.omni + costs.antenna.omni_sd * n +
                 costs.tower(std::max(radio.HTOmni, hv)) +
                 static_cast<double>(sd.size()) * costs.tower(radio.HTOmniSD);
    double rhs = 2.0 * costs.antenna.pp * n + costs.tower(hv);
    for (int u : sd) rhs += costs.tower(st.heights[u]);
    return lhs < rhs;
}

bool omni_capacity_ok(const HybridState& st, int v, const std::vector<int>& X) {
    double flow_sum = 0.0;
    for (int x : X) flow_sum += child_flow(st, v, x);
    return flow_sum <= st.inst->radio.U_Omni;
}

bool omni_interference_ok(const HybridState& st, int v, double rad) {
    const Point2& c = st.inst->vertices[v].pos;
    for (const auto& [center, r] : st.omni_discs)
        if (omni_overlap(st.inst->vertices[center].pos, r, c, rad)) return false;
    return true;
}

double max_dist(const HybridState& st, int v, const std::vector<int>& X) {
    double far = 0.0;
    for (int x : X) far = std::max(far, child_dist(st, v, x));
    return far;
}

}  // namespace

OmniConfig omni_ant_replace(const HybridState& st, int v) {
    const auto& radio = st.inst->radio;
    OmniConfig cfg;
    cfg.center = v;

    std::vector<int> X;
    for (int x : st.tree->children[v])
        if (eligible_child(st, v, x) && child_dist(st, v, x) <= radio.R_Omni)
            X.push_back(x);

    // The radius tracks the farthest covered child throughout.
    double rad = max_dist(st, v, X);
    while (!X.empty()) {
        const auto sd = subordinate_set(st, X);
        if (omni_cost_ok(st, v, X, sd) && omni_capacity_ok(st, v, X) &&
            omni_interference_ok(st, v, rad))
            break;

        if (!omni_interference_ok(st, v, rad)) {
            // Overlapping another disc: drop the farthest child and retune.
            int victim = X.front();
            for (int x : X) {
                const double dx = child_dist(st, v, x);
                const double dv = child_dist(st, v, victim);
                if (dx > dv || (dx == dv && x < victim)) victim = x;
            }
            std::erase(X, victim);
        } else {
            // Drop the highest-flow child, keeping subordinate candidates as
            // long as anything else is available.
            std::vector<int> pool;
            for (int x : X)
                if (std::find(sd.begin(), sd.end(), x) == sd.end()) pool.push_back(x);
            if (pool.empty()) pool = X;
            int victim = pool.front();
            for (int x : pool) {
                const double fx = child_flow(st, v, x);
                const double fv = child_flow(st, v, victim);
                if (fx > fv || (fx == fv && x < victim)) victim = x;
            }
            std::erase(X, victim);
        }
        rad = max_dist(st, v, X);
    }

    cfg.covered = X;
    cfg.subordinate = subordinate_set(st, X);
    cfg.radius = rad;
    return cfg;
}

std::vector<OmniConfig> omni_deploy(HybridState& st,
                                    std::vector<std::pair<int, double>>* overrides) {
    const auto& radio = st.inst->radio;
    std::vector<OmniConfig> all;
    for (int v : deepest_first_internal(*st.tree)) {
        OmniConfig cfg = omni_ant_replace(st, v);
        if (cfg.covered.empty()) continue;

        st.omni_discs.emplace_back(v, cfg.radius);
        for (int x : cfg.covered) st.replaced[st.tree->edge_index(v, x)] = 1;

        const double new_center = std::max(radio.HTOmni, st.heights[v]);
        if (new_center != st.heights[v]) {
            st.heights[v] = new_center;
            if (overrides) overrides->emplace_back(v, new_center);
        }
        for (int u : cfg.subordinate) {
            if (st.heights[u] != radio.HTOmniSD) {
                st.heights[u] = radio.HTOmniSD;
                if (overrides) overrides->emplace_back(u, radio.HTOmniSD);
            }
        }
        all.push_back(std::move(cfg));
    }
    return all;
}

PowerAssignment assign_transmit_power(const PlanningInstance& inst, const SteinerTree& tree,
                                      const HybridPlan& plan) {
    PowerAssignment pw;
    for (int te = 0; te < static_cast<int>(tree.edges.size()); ++te) {
        const bool replaced = (te < static_cast<int>(plan.replaced_mp.size()) &&
                               plan.replaced_mp[te]) ||
                              (te < static_cast<int>(plan.replaced_omni.size()) &&
                               plan.replaced_omni[te]);
        if (replaced) continue;
        const auto& e = tree.edges[te];
        const double d = dist(inst.vertices[e.child].pos, inst.vertices[e.parent].pos);
        pw.p2p.emplace_back(te, inst.power.level_for(d));
    }
    for (const auto& cfg : plan.mp) pw.mp.push_back(inst.power.level_for(cfg.radius));
    for (const auto& cfg : plan.omni) pw.omni.push_back(inst.power.level_for(cfg.radius));
    return pw;
}

HybridPlan deploy_hybrid(const PlanningInstance& inst, const SteinerTree& tree,
                         const CapacityPlan& cap, const HeightFunction& h,
                         HybridOrder order) {
    HybridPlan plan;
    plan.order = order;
    plan.replaced_mp.assign(tree.edges.size(), 0);
    plan.replaced_omni.assign(tree.edges.size(), 0);

    HybridState st = HybridState::make(inst, tree, cap, h);

    auto run_mp = [&] {
        std::vector<char> before = st.replaced;
        plan.mp = mp_deploy(st);
        for (std::size_t i = 0; i < st.replaced.size(); ++i)
            if (st.replaced[i] && !before[i]) plan.replaced_mp[i] = 1;
    };
    auto run_omni = [&] {
        std::vector<char> before = st.replaced;
        plan.omni = omni_deploy(st, &plan.height_overrides);
        for (std::size_t i = 0; i < st.replaced.size(); ++i)
            if (st.replaced[i] && !before[i]) plan.replaced_omni[i] = 1;
    };

    switch (order) {
        case HybridOrder::None: break;
        case HybridOrder::MpOnly: run_mp(); break;
        case HybridOrder::OmniOnly: run_omni(); break;
        case HybridOrder::MpThenOmni: run_mp(); run_omni(); break;
        case HybridOrder::OmniThenMp: run_omni(); run_mp(); break;
    }

    plan.power = assign_transmit_power(inst, tree, plan);

    const CostReport before = total_cost(inst, tree, cap, h, nullptr);
    const CostReport after = total_cost(inst, tree, cap, h, &plan);
    plan.cost_delta = after.total - before.total;
    return plan;
}

}  // namespace meshplan

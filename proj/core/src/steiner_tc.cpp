#include "meshplan/steiner_tc.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

namespace meshplan {

bool ratio_less(const CostBenefitRatio& a, const CostBenefitRatio& b) {
    if (a.infinite()) return false;
    if (b.infinite()) return true;
    return a.cost * b.benefit < b.cost * a.benefit;
}

bool ratio_equal(const CostBenefitRatio& a, const CostBenefitRatio& b) {
    if (a.infinite() || b.infinite()) return a.infinite() == b.infinite();
    return a.cost * b.benefit == b.cost * a.benefit;
}

int SteinerTree::edge_index(int u, int v) const {
    auto it = edge_lookup.find({std::min(u, v), std::max(u, v)});
    return it == edge_lookup.end() ? -1 : it->second;
}

void SteinerTree::build_lookup() {
    edge_lookup.clear();
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        const auto& e = edges[i];
        edge_lookup[{std::min(e.child, e.parent), std::max(e.child, e.parent)}] = i;
    }
}

std::vector<int> SteinerTree::path_to_root(int v) const {
    std::vector<int> path{v};
    while (parent[v] != -1) {
        v = parent[v];
        path.push_back(v);
    }
    return path;
}

std::vector<int> SteinerTree::vertex_list() const {
    std::vector<int> vs;
    for (int i = 0; i < static_cast<int>(in_tree.size()); ++i)
        if (in_tree[i]) vs.push_back(i);
    return vs;
}

int SteinerTree::degree(int v) const {
    int d = static_cast<int>(children[v].size());
    if (parent[v] != -1) ++d;
    return d;
}

std::optional<double> min_increment_to_cover(const PlanningInstance& inst,
                                             const Edge& e, double fixed_side_height,
                                             double raised_side_height) {
    const double step = inst.height_step;
    const double need = 2.0 * e.ob - fixed_side_height - raised_side_height;
    double beta = 0.0;
    if (need > 0) {
        double k = std::ceil(need / step - 1e-9);
        beta = k * step;
        while (fixed_side_height + raised_side_height + beta < 2.0 * e.ob)
            beta += step;  // float guard
    }
    if (raised_side_height + beta > inst.radio.HTMAX + 1e-9) return std::nullopt;
    return beta;
}

namespace {

// Non-terminal relays reachable from v: the first hop needs h(v)+delta, every
// interior hop is covered by the fixed relay heights. For each reachable relay
// we keep the min-hop, lexicographically smallest interior sequence.
struct RelayReach {
    std::vector<int> hops;                  // -1 = unreachable
    std::vector<std::vector<int>> path;     // interior sequence ending at the relay
};

RelayReach reach_relays(const PlanningInstance& inst, const HeightFunction& h, int v,
                        double delta) {
    RelayReach rr;
    rr.hops.assign(inst.size(), -1);
    rr.path.assign(inst.size(), {});

    std::vector<int> frontier;
    for (const auto& [eidx, w] : inst.neighbors(v)) {
        if (inst.is_terminal(w)) continue;
        if (h[v] + delta + h[w] >= 2.0 * inst.edges[eidx].ob && rr.hops[w] == -1) {
            rr.hops[w] = 1;
            rr.path[w] = {w};
            frontier.push_back(w);
        }
    }
    std::sort(frontier.begin(), frontier.end());

    int depth = 1;
    while (!frontier.empty()) {
        // Collect the next layer, then resolve each new relay's predecessor by
        // the smallest interior sequence so the paths are canonical.
        std::map<int, std::vector<int>> next;  // relay -> best predecessor path
        for (int w : frontier) {
            for (const auto& [eidx, x] : inst.neighbors(w)) {
                if (inst.is_terminal(x) || rr.hops[x] != -1) continue;
                if (h[w] + h[x] < 2.0 * inst.edges[eidx].ob) continue;
                auto it = next.find(x);
                if (it == next.end() || rr.path[w] < it->second) next[x] = rr.path[w];
            }
        }
        frontier.clear();
        for (auto& [x, pred_path] : next) {
            rr.hops[x] = depth + 1;
            rr.path[x] = pred_path;
            rr.path[x].push_back(x);
            frontier.push_back(x);
        }
        ++depth;
    }
    return rr;
}

std::optional<NeighborAttachment> relay_attachment(const PlanningInstance& inst,
                                                   const HeightFunction& h,
                                                   const RelayReach& rr, int u) {
    std::optional<NeighborAttachment> best;
    for (const auto& [eidx, w] : inst.neighbors(u)) {
        if (inst.is_terminal(w) || rr.hops[w] == -1) continue;
        auto beta = min_increment_to_cover(inst, inst.edges[eidx], h[w], h[u]);
        if (!beta) continue;
        NeighborAttachment cand;
        cand.terminal = u;
        cand.increment = *beta;
        cand.relays = rr.path[w];
        if (!best || cand.increment < best->increment ||
            (cand.increment == best->increment &&
             (cand.relays.size() < best->relays.size() ||
              (cand.relays.size() == best->relays.size() && cand.relays < best->relays))))
            best = cand;
    }
    return best;
}

double tower_increment(const PlanningInstance& inst, double current, double incr) {
    return inst.costs.tower(current + incr) - inst.costs.tower(current);
}

}  // namespace

std::vector<NeighborAttachment> logical_neighbors(const PlanningInstance& inst,
                                                  const HeightFunction& h,
                                                  const CoverState& cov, int v,
                                                  double delta) {
    const RelayReach rr = reach_relays(inst, h, v, delta);
    std::vector<NeighborAttachment> out;
    for (int u = 0; u < inst.size(); ++u) {
        if (u == v || !inst.is_terminal(u) || cov.same_component(u, v)) continue;

        // Smallest increment that connects u to v, over the direct edge and
        // every relay chain alike. A covered relay detour can undercut a
        // heavily obstructed direct edge.
        std::optional<NeighborAttachment> att;
        const int direct = inst.edge_between(u, v);
        if (direct != -1) {
            auto beta = min_increment_to_cover(inst, inst.edges[direct], h[v] + delta, h[u]);
            if (beta) {
                att = NeighborAttachment{u, *beta, 0.0, {}};
            }
        }
        if (auto relay = relay_attachment(inst, h, rr, u);
            relay && (!att || relay->increment < att->increment))
            att = relay;
        if (!att) continue;
        att->cost = tower_increment(inst, h[u], att->increment);
        out.push_back(std::move(*att));
    }
    return out;
}

NeighborAttachment best_relay_path(const PlanningInstance& inst, const HeightFunction& h,
                                   int v, double delta, int u) {
    const RelayReach rr = reach_relays(inst, h, v, delta);
    auto att = relay_attachment(inst, h, rr, u);
    if (!att)
        throw InconsistencyError("vertex " + std::to_string(inst.id_of(u)) +
                                 " is not a relay-reachable logical neighbor");
    att->cost = tower_increment(inst, h[u], att->increment);
    return *att;
}

StarResult star_steiner_tc(const PlanningInstance& inst, const HeightFunction& h,
                           const CoverState& cov, int v, double delta) {
    StarResult res;
    const double center_cost = tower_increment(inst, h[v], delta);

    auto neighbors = logical_neighbors(inst, h, cov, v, delta);

    // One representative per component: lowest cost, then lowest increment,
    // then smallest id.
    std::map<int, NeighborAttachment> reps;
    for (auto& nb : neighbors) {
        const int comp = cov.component[nb.terminal];
        auto it = reps.find(comp);
        if (it == reps.end() || nb.cost < it->second.cost ||
            (nb.cost == it->second.cost &&
             (nb.increment < it->second.increment ||
              (nb.increment == it->second.increment && nb.terminal < it->second.terminal))))
            reps[comp] = nb;
    }
    std::vector<NeighborAttachment> sorted;
    sorted.reserve(reps.size());
    for (auto& [comp, nb] : reps) sorted.push_back(nb);
    std::sort(sorted.begin(), sorted.end(),
              [](const NeighborAttachment& a, const NeighborAttachment& b) {
                  if (a.cost != b.cost) return a.cost < b.cost;
                  if (a.increment != b.increment) return a.increment < b.increment;
                  return a.terminal < b.terminal;
              });

    if (sorted.empty()) return res;  // infinite ratio, empty increments

    double prefix = 0.0;
    CostBenefitRatio best;
    int k_best = 0;
    for (int k = 1; k <= static_cast<int>(sorted.size()); ++k) {
        prefix += sorted[k - 1].cost;
        const CostBenefitRatio r{center_cost + prefix, k};
        if (ratio_less(r, best)) {
            best = r;
            k_best = k;
        }
    }

    res.ratio = best;
    res.selected.assign(sorted.begin(), sorted.begin() + k_best);
    res.increments.emplace_back(v, delta);
    for (const auto& nb : res.selected) res.increments.emplace_back(nb.terminal, nb.increment);
    return res;
}

std::vector<double> doubling_deltas(const PlanningInstance& inst, double current) {
    std::vector<double> out;
    const double cap = inst.radio.HTMAX - current;
    if (cap <= 1e-9) return out;
    for (double d = inst.height_step; d < cap - 1e-9; d *= 2.0) out.push_back(d);
    out.push_back(cap);
    return out;
}

SteinerSolution steiner_tc_solve(const PlanningInstance& inst) {
    SteinerSolution sol;
    sol.heights = initial_heights(inst);
    CoverState cov = cover(inst, sol.heights);

    while (cov.phi > 1) {
        StarResult best;
        int best_center = -1;
        double best_delta = 0.0;
        for (int v = 0; v < inst.size(); ++v) {
            if (!inst.is_terminal(v)) continue;
            for (double delta : doubling_deltas(inst, sol.heights[v])) {
                StarResult r = star_steiner_tc(inst, sol.heights, cov, v, delta);
                if (r.ratio.infinite()) continue;
                bool take = false;
                if (best_center == -1 || ratio_less(r.ratio, best.ratio)) {
                    take = true;
                } else if (ratio_equal(r.ratio, best.ratio)) {
                    if (r.ratio.cost < best.ratio.cost)
                        take = true;
                    else if (r.ratio.cost == best.ratio.cost &&
                             (v < best_center || (v == best_center && delta < best_delta)))
                        take = true;
                }
                if (take) {
                    best = std::move(r);
                    best_center = v;
                    best_delta = delta;
                }
            }
        }
        if (best_center == -1)
            throw InfeasibleError("no finite cost-to-benefit proposal while " +
                                  std::to_string(cov.phi) + " components remain");

        for (const auto& [vertex, incr] : best.increments) sol.heights[vertex] += incr;

        const int phi_before = cov.phi;
        cov = cover(inst, sol.heights);
        sol.trace.push_back({best.ratio.cost, phi_before - cov.phi, phi_before, cov.phi});
    }

    sol.tree = extract_steiner_tree(inst, cov);
    return sol;
}

SteinerTree extract_steiner_tree(const PlanningInstance& inst, const CoverState& cov) {
    if (cov.phi != 1)
        throw InconsistencyError("tree extraction requires a single terminal component");

    const int n = inst.size();
    SteinerTree tree;
    tree.root = inst.landline;
    tree.parent.assign(n, -1);
    tree.depth.assign(n, -1);
    tree.in_tree.assign(n, 0);

    // BFS over covered edges, neighbors in ascending id order.
    std::deque<int> queue{tree.root};
    tree.depth[tree.root] = 0;
    tree.in_tree[tree.root] = 1;
    while (!queue.empty()) {
        const int w = queue.front();
        queue.pop_front();
        for (const auto& [eidx, x] : inst.neighbors(w)) {
            if (!cov.edge_covered[eidx] || tree.in_tree[x]) continue;
            tree.in_tree[x] = 1;
            tree.parent[x] = w;
            tree.depth[x] = tree.depth[w] + 1;
            queue.push_back(x);
        }
    }
    for (int i = 0; i < n; ++i)
        if (inst.is_terminal(i) && !tree.in_tree[i])
            throw InconsistencyError("terminal outside the covered landline component");

    // Prune non-terminal dead ends.
    std::vector<int> deg(n, 0);
    for (int i = 0; i < n; ++i)
        if (tree.parent[i] != -1) {
            ++deg[i];
            ++deg[tree.parent[i]];
        }
    bool pruned = true;
    while (pruned) {
        pruned = false;
        for (int i = 0; i < n; ++i) {
            if (!tree.in_tree[i] || inst.is_terminal(i) || deg[i] > 1) continue;
            tree.in_tree[i] = 0;
            if (tree.parent[i] != -1) --deg[tree.parent[i]];
            deg[i] = 0;
            tree.parent[i] = -1;
            pruned = true;
        }
    }

    tree.children.assign(n, {});
    for (int i = 0; i < n; ++i) {
        if (!tree.in_tree[i] || tree.parent[i] == -1) continue;
        tree.children[tree.parent[i]].push_back(i);
        SteinerTree::TreeEdge te;
        te.child = i;
        te.parent = tree.parent[i];
        te.instance_edge = inst.edge_between(i, tree.parent[i]);
        tree.edges.push_back(te);
    }
    std::sort(tree.edges.begin(), tree.edges.end(),
              [](const auto& a, const auto& b) {
                  return std::minmax(a.child, a.parent) < std::minmax(b.child, b.parent);
              });
    tree.build_lookup();
    return tree;
}

}  // namespace meshplan

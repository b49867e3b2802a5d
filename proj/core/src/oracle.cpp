#include "meshplan/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "meshplan/union_find.hpp"

namespace meshplan {

namespace {

int grid_levels(const PlanningInstance& inst) {
    return static_cast<int>(
               std::floor((inst.radio.HTMAX - inst.radio.HTMIN) / inst.height_step +
                          1e-9)) +
           1;
}

}  // namespace

OracleResult brute_force_steiner_tc(const PlanningInstance& inst,
                                    std::uint64_t max_space) {
    std::vector<int> terminals;
    for (int i = 0; i < inst.size(); ++i)
        if (inst.is_terminal(i)) terminals.push_back(i);

    const int levels = grid_levels(inst);
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < terminals.size(); ++i) {
        if (space > max_space / static_cast<std::uint64_t>(levels)) {
            space = max_space + 1;  // saturate
            break;
        }
        space *= static_cast<std::uint64_t>(levels);
    }
    if (space > max_space)
        throw OracleRefusalError("oracle refuses: " + std::to_string(terminals.size()) +
                                     " terminals x " + std::to_string(levels) +
                                     " levels exceeds " + std::to_string(max_space) +
                                     " assignments",
                                 space);

    const auto t0 = std::chrono::steady_clock::now();

    HeightFunction h = initial_heights(inst);
    std::vector<int> assign(terminals.size(), 0);
    bool found = false;
    double best_cost = 0.0;
    HeightFunction best_h;

    for (;;) {
        for (std::size_t i = 0; i < terminals.size(); ++i)
            h[terminals[i]] = inst.radio.HTMIN + assign[i] * inst.height_step;

        double cost = 0.0;
        for (int t : terminals) cost += inst.costs.tower(h[t]);
        if (!found || cost < best_cost) {
            // Connectivity over the covered subgraph; only the cheaper
            // assignments pay for the union-find.
            if (cover(inst, h).phi == 1) {
                found = true;
                best_cost = cost;
                best_h = h;
            }
        }

        std::size_t pos = 0;
        while (pos < assign.size() && ++assign[pos] == levels) {
            assign[pos] = 0;
            ++pos;
        }
        if (pos == assign.size()) break;
    }

    if (!found)
        throw InfeasibleError("oracle: no height assignment connects all terminals");

    OracleResult res;
    res.heights = std::move(best_h);
    res.tower_cost = best_cost;
    res.search_space = space;
    res.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

namespace {

// Independent recomputation of the attachment cost for one candidate
// neighbor: cheapest increment over the direct edge, else over every relay
// chain enumerated by depth-first search.
struct OracleNeighbor {
    int terminal = -1;
    double increment = 0.0;
    double cost = 0.0;
};

std::optional<double> oracle_min_beta(const PlanningInstance& inst, double fixed_side,
                                      double raised, double ob) {
    const double step = inst.height_step;
    double beta = 0.0;
    while (fixed_side + raised + beta < 2.0 * ob) {
        beta += step;
        if (raised + beta > inst.radio.HTMAX + 1e-9) return std::nullopt;
    }
    return beta;
}

void dfs_relays(const PlanningInstance& inst, const HeightFunction& h, int w,
                std::vector<char>& visited, std::vector<char>& reachable) {
    reachable[w] = 1;
    visited[w] = 1;
    for (const auto& [eidx, x] : inst.neighbors(w)) {
        if (inst.is_terminal(x) || visited[x]) continue;
        if (h[w] + h[x] >= 2.0 * inst.edges[eidx].ob)
            dfs_relays(inst, h, x, visited, reachable);
    }
}

}  // namespace

StarResult brute_force_star(const PlanningInstance& inst, const HeightFunction& h,
                            const CoverState& cov, int v, double delta) {
    const double center_cost =
        inst.costs.tower(h[v] + delta) - inst.costs.tower(h[v]);

    // Relays reachable from v under the increment.
    std::vector<char> reachable(inst.size(), 0), visited(inst.size(), 0);
    for (const auto& [eidx, w] : inst.neighbors(v)) {
        if (inst.is_terminal(w) || visited[w]) continue;
        if (h[v] + delta + h[w] >= 2.0 * inst.edges[eidx].ob)
            dfs_relays(inst, h, w, visited, reachable);
    }

    std::vector<OracleNeighbor> neighbors;
    for (int u = 0; u < inst.size(); ++u) {
        if (u == v || !inst.is_terminal(u) || cov.same_component(u, v)) continue;
        std::optional<double> beta;
        const int direct = inst.edge_between(u, v);
        if (direct != -1)
            beta = oracle_min_beta(inst, h[v] + delta, h[u], inst.edges[direct].ob);
        for (const auto& [eidx, w] : inst.neighbors(u)) {
            if (inst.is_terminal(w) || !reachable[w]) continue;
            auto b = oracle_min_beta(inst, h[w], h[u], inst.edges[eidx].ob);
            if (b && (!beta || *b < *beta)) beta = b;
        }
        if (!beta) continue;
        OracleNeighbor nb;
        nb.terminal = u;
        nb.increment = *beta;
        nb.cost = inst.costs.tower(h[u] + *beta) - inst.costs.tower(h[u]);
        neighbors.push_back(nb);
    }

    // Cheapest representative per component.
    std::map<int, OracleNeighbor> reps;
    for (const auto& nb : neighbors) {
        const int comp = cov.component[nb.terminal];
        auto it = reps.find(comp);
        if (it == reps.end() || nb.cost < it->second.cost ||
            (nb.cost == it->second.cost &&
             (nb.increment < it->second.increment ||
              (nb.increment == it->second.increment &&
               nb.terminal < it->second.terminal))))
            reps[comp] = nb;
    }
    std::vector<OracleNeighbor> list;
    for (auto& [comp, nb] : reps) list.push_back(nb);

    StarResult res;
    if (list.empty()) return res;
    if (list.size() > 20)
        throw OracleRefusalError("brute_force_star: too many representatives",
                                 1ull << list.size());

    const std::uint64_t subsets = 1ull << list.size();
    std::uint64_t best_mask = 0;
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
        double cost = center_cost;
        int k = 0;
        for (std::size_t i = 0; i < list.size(); ++i)
            if (mask & (1ull << i)) {
                cost += list[i].cost;
                ++k;
            }
        const CostBenefitRatio r{cost, k};
        if (ratio_less(r, res.ratio)) {
            res.ratio = r;
            best_mask = mask;
        }
    }

    res.increments.emplace_back(v, delta);
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (!(best_mask & (1ull << i))) continue;
        NeighborAttachment att;
        att.terminal = list[i].terminal;
        att.increment = list[i].increment;
        att.cost = list[i].cost;
        res.selected.push_back(att);
        res.increments.emplace_back(list[i].terminal, list[i].increment);
    }
    return res;
}

}  // namespace meshplan

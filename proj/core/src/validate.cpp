#include "meshplan/validate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace meshplan {

namespace {

struct Checker {
    const PlanningInstance& inst;
    const ordered_json& doc;
    std::vector<std::string> errs;

    HeightFunction heights;       // pre-hybrid, by index
    SteinerTree tree;
    CapacityPlan cap;
    bool structure_ok = false;

    std::vector<MPConfig> mp;
    std::vector<OmniConfig> omni;
    std::vector<std::pair<int, double>> overrides;
    double cost_delta = 0.0;
    bool has_hybrid_passes = false;

    explicit Checker(const PlanningInstance& i, const ordered_json& d) : inst(i), doc(d) {}

    void fail(const std::string& msg) { errs.push_back(msg); }

    template <typename F>
    void guarded(const char* what, F&& f) {
        try {
            f();
        } catch (const std::exception& ex) {
            fail(std::string(what) + ": " + ex.what());
        }
    }

    void check_heights() {
        heights.assign(inst.size(), -1.0);
        for (const auto& row : doc.at("heights"))
            heights[inst.index_of(row.at(0).get<int>())] = row.at(1).get<double>();
        const auto& r = inst.radio;
        for (int i = 0; i < inst.size(); ++i) {
            const double h = heights[i];
            if (h < 0) {
                fail("height missing for vertex " + std::to_string(inst.id_of(i)));
                continue;
            }
            if (inst.is_terminal(i)) {
                if (h < r.HTMIN - 1e-9 || h > r.HTMAX + 1e-9)
                    fail("terminal height out of bounds at " +
                         std::to_string(inst.id_of(i)));
                const double k = std::round((h - r.HTMIN) / inst.height_step);
                if (std::abs(r.HTMIN + k * inst.height_step - h) > 1e-6)
                    fail("terminal height off the grid at " +
                         std::to_string(inst.id_of(i)));
            } else if (h != inst.vertices[i].fixed_height) {
                fail("non-terminal height diverges from fixed height at " +
                     std::to_string(inst.id_of(i)));
            }
        }
    }

    void check_tree() {
        const auto& jt = doc.at("steiner_tree");
        const int root = inst.index_of(jt.at("root").get<int>());
        if (root != inst.landline) fail("tree root is not the landline");

        std::vector<std::pair<int, int>> edges;
        for (const auto& row : jt.at("edges")) {
            const int u = inst.index_of(row.at(0).get<int>());
            const int v = inst.index_of(row.at(1).get<int>());
            const int eidx = inst.edge_between(u, v);
            if (eidx == -1) {
                fail("tree edge absent from instance");
                return;
            }
            if (!los_covered(inst, eidx, heights))
                fail("tree edge lacks line of sight under the solved heights");
            edges.emplace_back(u, v);
        }

        // Rebuild rooted structure by BFS over the undirected edge list.
        const int n = inst.size();
        std::vector<std::vector<int>> adj(n);
        for (auto& [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        for (auto& a : adj) std::sort(a.begin(), a.end());

        tree.root = root;
        tree.parent.assign(n, -1);
        tree.depth.assign(n, -1);
        tree.in_tree.assign(n, 0);
        tree.children.assign(n, {});
        std::deque<int> queue{root};
        tree.in_tree[root] = 1;
        tree.depth[root] = 0;
        int visited = 1;
        while (!queue.empty()) {
            const int w = queue.front();
            queue.pop_front();
            for (int x : adj[w]) {
                if (tree.in_tree[x]) continue;
                tree.in_tree[x] = 1;
                tree.parent[x] = w;
                tree.depth[x] = tree.depth[w] + 1;
                tree.children[w].push_back(x);
                queue.push_back(x);
                ++visited;
            }
        }
        if (visited != static_cast<int>(edges.size()) + 1) {
            fail("steiner tree is not a connected acyclic graph");
            return;
        }
        for (int i = 0; i < n; ++i) {
            if (inst.is_terminal(i) && !tree.in_tree[i])
                fail("terminal missing from the tree");
            if (!inst.is_terminal(i) && tree.in_tree[i]) {
                const int deg =
                    static_cast<int>(tree.children[i].size()) + (tree.parent[i] != -1);
                if (deg < 2) fail("non-terminal leaf survived pruning");
            }
        }
        for (auto& [u, v] : edges) {
            SteinerTree::TreeEdge te;
            te.child = tree.parent[u] == v ? u : v;
            te.parent = tree.parent[u] == v ? v : u;
            te.instance_edge = inst.edge_between(u, v);
            tree.edges.push_back(te);
        }
        std::sort(tree.edges.begin(), tree.edges.end(), [](const auto& a, const auto& b) {
            return std::minmax(a.child, a.parent) < std::minmax(b.child, b.parent);
        });
        tree.build_lookup();
        structure_ok = true;
    }

    void check_capacity() {
        const auto& jc = doc.at("capacity");
        const double U = inst.radio.U;

        std::vector<Group> groups;
        std::set<int> grouped;
        for (const auto& jg : jc.at("groups")) {
            Group g;
            for (const auto& m : jg.at("members")) {
                const int idx = inst.index_of(m.get<int>());
                g.members.push_back(idx);
                if (!grouped.insert(idx).second) fail("terminal in two groups");
            }
            g.hub = inst.index_of(jg.at("hub").get<int>());
            g.demand = jg.at("demand").get<double>();
            groups.push_back(g);
        }
        for (int i = 0; i < inst.size(); ++i)
            if (inst.is_terminal(i) && !grouped.count(i))
                fail("terminal missing from every group");

        double total_demand = 0.0;
        for (const auto& g : groups) {
            double sum = 0.0;
            bool hub_member = false;
            for (int m : g.members) {
                sum += inst.vertices[m].demand;
                hub_member |= m == g.hub;
            }
            total_demand += sum;
            if (sum != g.demand) fail("group demand does not match its members");
            if (sum > U + 1e-9) fail("group demand exceeds link capacity");
            if (!hub_member) fail("hub outside its group");
            // Internal aggregated traffic reaching the hub.
            if (sum - inst.vertices[g.hub].demand >
                U - inst.vertices[g.hub].demand + 1e-9)
                fail("group internal traffic exceeds U - dem(hub)");
            for (int m : g.members) {
                if (tree.depth[m] < tree.depth[g.hub] ||
                    (tree.depth[m] == tree.depth[g.hub] && m < g.hub))
                    fail("hub is not the closest group member to the landline");
            }
        }

        // The grouping and installation are deterministic; recomputing them
        // must reproduce the document exactly.
        auto expect_groups = partition_groups(inst, tree);
        if (expect_groups.size() != groups.size()) {
            fail("group partition does not match the post-order accumulation");
        } else {
            for (std::size_t i = 0; i < groups.size(); ++i) {
                auto sorted_doc = groups[i].members;
                std::sort(sorted_doc.begin(), sorted_doc.end());
                auto sorted_exp = expect_groups[i].members;
                std::sort(sorted_exp.begin(), sorted_exp.end());
                if (sorted_doc != sorted_exp || groups[i].hub != expect_groups[i].hub)
                    fail("group " + std::to_string(i) +
                         " does not match the post-order accumulation");
            }
        }

        cap = install_capacity(inst, tree, expect_groups);

        auto read_edge_rows = [&](const ordered_json& rows, std::vector<double>& out,
                                  const char* what) {
            out.assign(tree.edges.size(), -1.0);
            for (const auto& row : rows) {
                const int u = inst.index_of(row.at(0).get<int>());
                const int v = inst.index_of(row.at(1).get<int>());
                const int te = tree.edge_index(u, v);
                if (te == -1) {
                    fail(std::string(what) + " on an edge absent from the tree");
                    continue;
                }
                out[te] = row.at(2).get<double>();
            }
        };
        std::vector<double> flows, copies;
        read_edge_rows(jc.at("flows"), flows, "flow");
        read_edge_rows(jc.at("copies"), copies, "copies");

        bool case1 = total_demand <= U;
        for (std::size_t e = 0; e < tree.edges.size(); ++e) {
            if (flows[e] < 0 || copies[e] < 0) {
                fail("tree edge missing flow or copies");
                continue;
            }
            if (flows[e] != cap.flow[e]) fail("flow differs from recomputation");
            if (copies[e] != cap.copies[e]) fail("copies differ from recomputation");
            if (copies[e] < 1) fail("tree edge with no installed link");
            if (flows[e] > U * copies[e] + 1e-9) fail("flow exceeds installed capacity");
            if (case1 && copies[e] != 1) fail("case-1 instance with extra link copies");
        }

        // Flow conservation over the directed leg decomposition.
        std::vector<double> net(inst.size(), 0.0);  // outflow - inflow
        auto push_leg = [&](int from, int to, double amount) {
            // Walk from -> to over the tree, accumulating per-vertex balance.
            int a = from, b = to;
            std::vector<int> up_a{a}, up_b{b};
            while (a != b) {
                if (tree.depth[a] >= tree.depth[b]) {
                    a = tree.parent[a];
                    up_a.push_back(a);
                } else {
                    b = tree.parent[b];
                    up_b.push_back(b);
                }
            }
            std::vector<int> path = up_a;
            path.insert(path.end(), up_b.rbegin() + 1, up_b.rend());
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                net[path[i]] += amount;
                net[path[i + 1]] -= amount;
            }
        };
        for (const auto& g : expect_groups) {
            for (int m : g.members)
                if (m != g.hub) push_leg(m, g.hub, inst.vertices[m].demand);
            if (g.hub != tree.root) push_leg(g.hub, tree.root, g.demand);
        }
        for (int i = 0; i < inst.size(); ++i) {
            if (!tree.in_tree[i]) continue;
            double expected;
            if (i == tree.root)
                expected = -(total_demand - inst.vertices[i].demand);
            else
                expected = inst.vertices[i].demand;
            if (std::abs(net[i] - expected) > 1e-6)
                fail("flow conservation violated at vertex " +
                     std::to_string(inst.id_of(i)));
        }

        // Routes are the unique tree paths.
        for (const auto& row : jc.at("routes")) {
            const int t = inst.index_of(row.at(0).get<int>());
            std::vector<int> path;
            for (const auto& x : row.at(1)) path.push_back(inst.index_of(x.get<int>()));
            if (path != tree.path_to_root(t))
                fail("route is not the tree path for terminal " +
                     std::to_string(inst.id_of(t)));
        }
    }

    void parse_hybrid() {
        const auto& jh = doc.at("hybrid");
        has_hybrid_passes = jh.at("order").get<std::string>() != "none";
        if (!has_hybrid_passes) return;
        for (const auto& jc : jh.value("mp", ordered_json::array())) {
            MPConfig cfg;
            cfg.apex = inst.index_of(jc.at("apex").get<int>());
            cfg.direction = inst.index_of(jc.at("direction").get<int>());
            cfg.beamwidth = jc.at("beamwidth").get<double>();
            cfg.radius = jc.at("radius").get<double>();
            for (const auto& x : jc.at("covered"))
                cfg.covered.push_back(inst.index_of(x.get<int>()));
            mp.push_back(cfg);
        }
        for (const auto& jc : jh.value("omni", ordered_json::array())) {
            OmniConfig cfg;
            cfg.center = inst.index_of(jc.at("center").get<int>());
            cfg.radius = jc.at("radius").get<double>();
            for (const auto& x : jc.at("covered"))
                cfg.covered.push_back(inst.index_of(x.get<int>()));
            for (const auto& x : jc.at("subordinate"))
                cfg.subordinate.push_back(inst.index_of(x.get<int>()));
            omni.push_back(cfg);
        }
        for (const auto& row : jh.value("height_overrides", ordered_json::array()))
            overrides.emplace_back(inst.index_of(row.at(0).get<int>()),
                                   row.at(1).get<double>());
        cost_delta = jh.value("cost_delta", 0.0);
    }

    void check_hybrid() {
        parse_hybrid();
        const auto& r = inst.radio;
        const auto& ant = inst.costs.antenna;

        std::set<int> replaced;  // tree edge indices, across both kinds
        auto claim_edge = [&](int center, int x) -> int {
            const int te = tree.edge_index(center, x);
            if (te == -1) {
                fail("hyperlink covers a non-tree edge");
                return -1;
            }
            if (tree.edges[te].parent == x) fail("hyperlink covers the parent edge");
            if (cap.copies[te] != 1) fail("hyperlink covers a multi-copy edge");
            if (!replaced.insert(te).second) fail("edge replaced by two hyperlinks");
            return te;
        };

        for (const auto& cfg : mp) {
            if (cfg.covered.size() < 2) fail("MP config covering fewer than 2 children");
            if (cfg.beamwidth > r.BWMAX + 1e-9) fail("MP beamwidth exceeds BWMAX");
            if (cfg.radius > r.R_MP + 1e-9) fail("MP radius exceeds R_MP");
            double flow_sum = 0.0;
            for (int x : cfg.covered) {
                const int te = claim_edge(cfg.apex, x);
                if (te == -1) continue;
                flow_sum += cap.flow[te];
                // Range constraint: every covered edge inside the sector.
                if (!sector_covers(inst, inst.edges[tree.edges[te].instance_edge],
                                   cfg.apex, cfg.direction, cfg.beamwidth, cfg.radius))
                    fail("MP covered edge outside its sector");
            }
            if (flow_sum > r.U + 1e-9) fail("MP capacity constraint violated");
            if (!(ant.mp < ant.pp * static_cast<double>(cfg.covered.size())))
                fail("MP cost constraint violated");
            for (const auto& te : tree.edges) {
                const bool covered =
                    (te.parent == cfg.apex &&
                     std::find(cfg.covered.begin(), cfg.covered.end(), te.child) !=
                         cfg.covered.end());
                if (covered) continue;
                if (sector_covers(inst, inst.edges[te.instance_edge], cfg.apex,
                                  cfg.direction, cfg.beamwidth, cfg.radius))
                    fail("MP interference constraint violated");
            }
        }
        // Sectors sharing an apex must be angularly disjoint.
        for (std::size_t i = 0; i < mp.size(); ++i)
            for (std::size_t j = i + 1; j < mp.size(); ++j) {
                if (mp[i].apex != mp[j].apex) continue;
                const double between =
                    angle_deg(inst.vertices[mp[i].apex].pos,
                              inst.vertices[mp[i].direction].pos,
                              inst.vertices[mp[j].direction].pos);
                if (between <= (mp[i].beamwidth + mp[j].beamwidth) / 2.0)
                    fail("overlapping MP sectors at one vertex");
            }

        // Omni constraints, re-played in adoption order for the height terms.
        HeightFunction hcur = heights;
        std::vector<std::pair<int, double>> replay_overrides;
        for (const auto& cfg : omni) {
            if (cfg.covered.empty()) fail("empty omni config serialized");
            if (cfg.radius > r.R_Omni + 1e-9) fail("omni radius exceeds R_Omni");
            double flow_sum = 0.0;
            double far = 0.0;
            for (int x : cfg.covered) {
                const int te = claim_edge(cfg.center, x);
                if (te == -1) continue;
                flow_sum += cap.flow[te];
                const double d =
                    dist(inst.vertices[cfg.center].pos, inst.vertices[x].pos);
                far = std::max(far, d);
                if (d > r.R_Omni + 1e-9) fail("omni range constraint violated");
            }
            if (far != cfg.radius) fail("omni radius is not the farthest covered child");
            if (flow_sum > r.U_Omni + 1e-9) fail("omni capacity constraint violated");

            std::vector<int> expect_sd;
            for (int x : cfg.covered)
                if (tree.degree(x) == 1) expect_sd.push_back(x);
            auto sorted_sd = cfg.subordinate;
            std::sort(sorted_sd.begin(), sorted_sd.end());
            if (sorted_sd != expect_sd)
                fail("omni subordinate set is not the single-edge covered children");

            const auto n = static_cast<double>(cfg.covered.size());
            double lhs = ant.omni + ant.omni_sd * n +
                         inst.costs.tower(std::max(r.HTOmni, hcur[cfg.center])) +
                         static_cast<double>(cfg.subordinate.size()) *
                             inst.costs.tower(r.HTOmniSD);
            double rhs = 2.0 * ant.pp * n + inst.costs.tower(hcur[cfg.center]);
            for (int u : cfg.subordinate) rhs += inst.costs.tower(hcur[u]);
            if (!(lhs < rhs)) fail("omni cost constraint violated");

            const double new_center = std::max(r.HTOmni, hcur[cfg.center]);
            if (new_center != hcur[cfg.center]) {
                hcur[cfg.center] = new_center;
                replay_overrides.emplace_back(cfg.center, new_center);
            }
            for (int u : cfg.subordinate)
                if (hcur[u] != r.HTOmniSD) {
                    hcur[u] = r.HTOmniSD;
                    replay_overrides.emplace_back(u, r.HTOmniSD);
                }
        }
        for (std::size_t i = 0; i < omni.size(); ++i)
            for (std::size_t j = i + 1; j < omni.size(); ++j)
                if (omni_overlap(inst.vertices[omni[i].center].pos, omni[i].radius,
                                 inst.vertices[omni[j].center].pos, omni[j].radius))
                    fail("omni interference constraint violated (overlapping discs)");

        if (replay_overrides != overrides)
            fail("height overrides do not match the replayed omni adoptions");

        // Line of sight must survive on every edge that is still p2p.
        std::set<int> omni_edges;
        for (const auto& cfg : omni)
            for (int x : cfg.covered) {
                const int te = tree.edge_index(cfg.center, x);
                if (te != -1) omni_edges.insert(te);
            }
        for (int te = 0; te < static_cast<int>(tree.edges.size()); ++te) {
            if (omni_edges.count(te)) continue;
            if (!los_covered(inst, tree.edges[te].instance_edge, hcur))
                fail("p2p edge lost line of sight after omni overrides");
        }

        // Cost delta re-derivation.
        HybridPlan hp;
        hp.order = HybridOrder::MpThenOmni;
        hp.mp = mp;
        hp.omni = omni;
        hp.height_overrides = overrides;
        hp.replaced_mp.assign(tree.edges.size(), 0);
        hp.replaced_omni.assign(tree.edges.size(), 0);
        for (const auto& cfg : mp)
            for (int x : cfg.covered) {
                const int te = tree.edge_index(cfg.apex, x);
                if (te != -1) hp.replaced_mp[te] = 1;
            }
        for (int te : omni_edges) hp.replaced_omni[te] = 1;
        const double before = total_cost(inst, tree, cap, heights, nullptr).total;
        const double after = total_cost(inst, tree, cap, heights, &hp).total;
        if (after - before != cost_delta) fail("cost delta differs from recomputation");
        if (cost_delta > 0) fail("hybrid plan increased the total cost");
        if ((!mp.empty() || !omni.empty()) && !(cost_delta < 0))
            fail("adopted hyperlinks without a strict cost decrease");

        // Power assignment re-derivation.
        const auto& jpw = doc.at("hybrid").at("power");
        PowerAssignment expect = assign_transmit_power(inst, tree, hp);
        if (jpw.at("p2p").size() != expect.p2p.size()) {
            fail("p2p power rows differ from recomputation");
        } else {
            std::size_t i = 0;
            for (const auto& row : jpw.at("p2p")) {
                const int te = tree.edge_index(inst.index_of(row.at(0).get<int>()),
                                               inst.index_of(row.at(1).get<int>()));
                if (te != expect.p2p[i].first || row.at(2).get<double>() != expect.p2p[i].second)
                    fail("p2p power differs from recomputation");
                ++i;
            }
        }
        if (jpw.at("mp").get<std::vector<double>>() != expect.mp ||
            jpw.at("omni").get<std::vector<double>>() != expect.omni)
            fail("hyperlink power differs from recomputation");
    }

    void check_costs_and_bounds() {
        HybridPlan hp;
        HybridPlan* hpp = nullptr;
        if (has_hybrid_passes) {
            hp.mp = mp;
            hp.omni = omni;
            hp.height_overrides = overrides;
            hpp = &hp;
        }
        const CostReport rep = total_cost(inst, tree, cap, heights, hpp);
        const auto& jc = doc.at("costs");
        if (jc.at("tower").get<double>() != rep.tower ||
            jc.at("link").get<double>() != rep.link ||
            jc.at("antenna").get<double>() != rep.antenna ||
            jc.at("total").get<double>() != rep.total)
            fail("cost report differs from recomputation");

        const BoundReport b = bound_report(inst);
        const auto& jb = doc.at("bounds");
        if (jb.at("terminals").get<int>() != b.terminals ||
            jb.at("non_terminals").get<int>() != b.non_terminals ||
            jb.at("gamma").get<double>() != b.gamma ||
            jb.at("case").get<int>() != b.case_id ||
            jb.at("ratio").get<double>() != b.ratio)
            fail("bound report differs from recomputation");
    }
};

}  // namespace

std::vector<std::string> validate_plan(const PlanningInstance& inst,
                                       const ordered_json& plan_doc,
                                       const std::string& instance_digest) {
    Checker c(inst, plan_doc);
    if (!instance_digest.empty()) {
        const auto stored = plan_doc.value("instance_digest", std::string{});
        if (stored != instance_digest)
            c.fail("instance digest mismatch: plan belongs to a different instance");
    }
    c.guarded("heights", [&] { c.check_heights(); });
    c.guarded("steiner_tree", [&] { c.check_tree(); });
    if (c.structure_ok) {
        c.guarded("capacity", [&] { c.check_capacity(); });
        c.guarded("hybrid", [&] { c.check_hybrid(); });
        c.guarded("costs", [&] { c.check_costs_and_bounds(); });
    }
    return c.errs;
}

}  // namespace meshplan

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "meshplan/analysis.hpp"
#include "meshplan/cnd.hpp"
#include "meshplan/generator.hpp"
#include "test_support.hpp"

using namespace meshplan;
using namespace meshplan::test;

namespace {

// Chain 0-1-2-3-4 rooted at the landline; post-order visits the far end
// first, so the deepest terminal opens the first group.
PlanningInstance chain4() {
    return make_instance({{0, 0, 0, VertexKind::Landline},
                          {1, 1000, 0, VertexKind::Terminal, 3},
                          {2, 2000, 0, VertexKind::Terminal, 3},
                          {3, 3000, 0, VertexKind::Terminal, 3},
                          {4, 4000, 0, VertexKind::Terminal, 3}},
                         {{0, 1, 0.0}, {1, 2, 0.0}, {2, 3, 0.0}, {3, 4, 0.0}}, 0);
}

}  // namespace

TEST_CASE("group partition accumulates in post order") {
    SUBCASE("uniform demand 3, capacity 10: three then one") {
        // Tree is the chain 0-1-2-3-4; post-order terminals: 4, 3, 2, 1, 0.
        auto inst = chain4();
        auto sol = steiner_tc_solve(inst);
        auto groups = partition_groups(inst, sol.tree);
        REQUIRE(groups.size() == 2);
        CHECK(groups[0].members == std::vector<int>{4, 3, 2});
        CHECK(groups[0].demand == 9.0);
        // The landline rides in the trailing group with zero demand.
        CHECK(groups[1].members == std::vector<int>{1, 0});
        CHECK(groups[1].demand == 3.0);
    }
    SUBCASE("single terminal: singleton group") {
        auto inst = make_instance({{0, 0, 0, VertexKind::Landline},
                                   {1, 1000, 0, VertexKind::Terminal, 4}},
                                  {{0, 1, 0.0}}, 0);
        auto sol = steiner_tc_solve(inst);
        auto groups = partition_groups(inst, sol.tree);
        REQUIRE(groups.size() == 1);
        CHECK(groups[0].members == std::vector<int>{1, 0});
    }
    SUBCASE("total demand within capacity: exactly one group") {
        auto inst = make_instance({{0, 0, 0, VertexKind::Landline},
                                   {1, 1000, 0, VertexKind::Terminal, 3},
                                   {2, 2000, 0, VertexKind::Terminal, 3},
                                   {3, 3000, 0, VertexKind::Terminal, 3}},
                                  {{0, 1, 0.0}, {1, 2, 0.0}, {2, 3, 0.0}}, 0);
        auto sol = steiner_tc_solve(inst);
        auto groups = partition_groups(inst, sol.tree);
        CHECK(groups.size() == 1);
    }
}

TEST_CASE("hub selection: closest member, ties to the smaller id") {
    SteinerTree tree;
    tree.depth = {0, 2, 5, 3, 3};
    SUBCASE("hop distances 2 and 5") {
        Group g;
        g.members = {2, 1};
        CHECK(select_hub(tree, g) == 1);
    }
    SUBCASE("singleton") {
        Group g;
        g.members = {2};
        CHECK(select_hub(tree, g) == 2);
    }
    SUBCASE("tie at depth 3 between ids 4 and 3") {
        Group g;
        g.members = {4, 3};
        CHECK(select_hub(tree, g) == 3);
    }
}

TEST_CASE("capacity installation") {
    SUBCASE("case 1: one copy per edge") {
        auto inst = make_instance({{0, 0, 0, VertexKind::Landline},
                                   {1, 1000, 0, VertexKind::Terminal, 4},
                                   {2, 2000, 0, VertexKind::Terminal, 4}},
                                  {{0, 1, 0.0}, {1, 2, 0.0}}, 0);
        auto sol = steiner_tc_solve(inst);
        auto plan = install_capacity(inst, sol.tree, partition_groups(inst, sol.tree));
        for (int c : plan.copies) CHECK(c == 1);
    }
    SUBCASE("worst-case chain (8,3,2): hub distances sum to 21") {
        auto inst = build_worst_chain(8, 3, 2, 5.0);
        auto sol = steiner_tc_solve(inst);
        auto groups = partition_groups(inst, sol.tree);
        long long total = 0;
        for (const auto& g : groups) total += sol.tree.depth[g.hub];
        CHECK(total == 21);
        CHECK(total == worst_chain_hub_distance(8, 3, 2));
    }
    SUBCASE("two hub paths over one edge add two copies") {
        // Relay hub 1 fans out to two two-terminal subtrees plus a straddler.
        auto inst = make_instance(
            {{0, 0, 0, VertexKind::Landline},
             {1, 1000, 0, VertexKind::NonTerminal, 0, 10},
             {2, 2000, 500, VertexKind::Terminal, 5},
             {3, 3000, 500, VertexKind::Terminal, 4},
             {4, 2000, -500, VertexKind::Terminal, 5},
             {5, 3000, -500, VertexKind::Terminal, 5},
             {6, 2000, 0, VertexKind::Terminal, 2}},
            {{0, 1, 0.0}, {1, 2, 0.0}, {2, 3, 0.0}, {1, 4, 0.0}, {4, 5, 0.0}, {1, 6, 0.0}},
            0);
        auto sol = steiner_tc_solve(inst);
        auto plan = install_capacity(inst, sol.tree, partition_groups(inst, sol.tree));
        const int e01 = sol.tree.edge_index(0, 1);
        CHECK(plan.flow[e01] == 21.0);
        CHECK(plan.copies[e01] == 3);  // base + one per overflowing hub aggregate
        for (std::size_t e = 0; e < plan.flow.size(); ++e)
            CHECK(plan.flow[e] <= inst.radio.U * plan.copies[e]);
    }
}

TEST_CASE("residual capacity formula") {
    CHECK(residual_capacity(7.0, 10.0) == 3.0);
    CHECK(residual_capacity(0.0, 10.0) == 0.0);
    CHECK(residual_capacity(13.0, 10.0) == 7.0);
}

TEST_CASE("uniform chain group count matches demand over capacity") {
    auto inst = build_worst_chain(8, 0, 2, 5.0);  // 7 terminals of 5, U = 10
    auto sol = steiner_tc_solve(inst);
    auto groups = partition_groups(inst, sol.tree);
    double total = 0.0;
    for (const auto& v : inst.vertices) total += v.demand;
    CHECK(groups.size() == static_cast<std::size_t>(std::ceil(total / inst.radio.U)));
}

TEST_CASE("capacity plan invariants on random instances") {
    for (std::uint64_t seed = 50; seed < 58; ++seed) {
        GenParams p;
        p.seed = seed;
        p.terminals = 7;
        p.non_terminals = 3;
        auto inst = generate_instance(p);
        auto sol = steiner_tc_solve(inst);
        auto groups = partition_groups(inst, sol.tree);
        auto plan = install_capacity(inst, sol.tree, groups);

        double total = 0.0;
        for (const auto& g : groups) {
            double sum = 0.0;
            for (int m : g.members) sum += inst.vertices[m].demand;
            CHECK(sum == g.demand);
            CHECK(g.demand <= inst.radio.U);
            // Internal traffic reaching the hub.
            CHECK(g.demand - inst.vertices[g.hub].demand <=
                  inst.radio.U - inst.vertices[g.hub].demand);
            total += sum;
        }

        for (std::size_t e = 0; e < plan.flow.size(); ++e) {
            CHECK(plan.copies[e] >= 1);
            CHECK(plan.flow[e] <= inst.radio.U * plan.copies[e]);
            const double res = residual_capacity(plan.flow[e], inst.radio.U);
            CHECK(res >= 0.0);
            CHECK(res < inst.radio.U);
        }
        if (total <= inst.radio.U)
            for (int c : plan.copies) CHECK(c == 1);

        // Installation is idempotent.
        auto again = install_capacity(inst, sol.tree, groups);
        CHECK(again.flow == plan.flow);
        CHECK(again.copies == plan.copies);
    }
}

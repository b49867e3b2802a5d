#include <doctest.h>

#include "meshplan/generator.hpp"
#include "meshplan/oracle.hpp"
#include "test_support.hpp"

using namespace meshplan;
using namespace meshplan::test;

TEST_CASE("exhaustive tower-cost minimum") {
    SUBCASE("two terminals split a 20 m requirement") {
        auto inst = make_instance({{0, 0, 0, VertexKind::Landline},
                                   {1, 1000, 0, VertexKind::Terminal, 2}},
                                  {{0, 1, 10.0}}, 0);
        auto res = brute_force_steiner_tc(inst);
        CHECK(res.tower_cost == 20.0);  // any split summing to 20, linear table
        CHECK(res.heights[0] + res.heights[1] == 20.0);
        CHECK(res.search_space == 31ull * 31ull);
    }
    SUBCASE("no assignment connects the terminals") {
        auto inst = make_instance({{0, 0, 0, VertexKind::Landline},
                                   {1, 1000, 0, VertexKind::Terminal, 2}},
                                  {{0, 1, 40.0}}, 0);  // needs 80 > 2 * HTMAX
        CHECK_THROWS_AS(brute_force_steiner_tc(inst), InfeasibleError);
    }
    SUBCASE("greedy matches the oracle on a single mandatory edge") {
        auto inst = make_instance({{0, 0, 0, VertexKind::Landline},
                                   {1, 1000, 0, VertexKind::Terminal, 2}},
                                  {{0, 1, 10.0}}, 0);
        auto sol = steiner_tc_solve(inst);
        double greedy = inst.costs.tower(sol.heights[0]) + inst.costs.tower(sol.heights[1]);
        auto res = brute_force_steiner_tc(inst);
        CHECK(greedy == res.tower_cost);
    }
    SUBCASE("refusal on oversized spaces") {
        GenParams p;
        p.seed = 3;
        p.terminals = 7;  // 31^7 assignments on the full grid
        p.non_terminals = 0;
        auto inst = generate_instance(p);
        CHECK_THROWS_AS(brute_force_steiner_tc(inst), OracleRefusalError);

        GenParams q;
        q.seed = 3;
        q.terminals = 4;
        q.non_terminals = 1;
        q.radio.HTMAX = 5.0;
        q.ob_max = 4.5;
        q.area = 3000.0;
        auto small = generate_instance(q);
        CHECK_THROWS_AS(brute_force_steiner_tc(small, 10), OracleRefusalError);
        CHECK_NOTHROW(brute_force_steiner_tc(small, 6 * 6 * 6 * 6));
    }
}

TEST_CASE("star subset oracle") {
    SUBCASE("zero logical neighbors give an infinite ratio") {
        auto inst = make_instance({{0, 0, 0, VertexKind::Landline},
                                   {1, 9000, 0, VertexKind::Terminal, 2}},
                                  {{0, 1, 29.0}}, 0);
        auto h = initial_heights(inst);
        auto cov = cover(inst, h);
        CHECK(brute_force_star(inst, h, cov, 0, 1.0).ratio.infinite());
    }
    SUBCASE("single neighbor: ratio is the pair cost") {
        auto inst = make_instance({{0, 0, 0, VertexKind::Landline},
                                   {1, 1000, 0, VertexKind::Terminal, 2}},
                                  {{0, 1, 5.0}}, 0);
        auto h = initial_heights(inst);
        auto cov = cover(inst, h);
        auto res = brute_force_star(inst, h, cov, 0, 2.0);
        CHECK(res.ratio.benefit == 1);
        CHECK(res.ratio.cost == 2.0 + 8.0);  // delta cost + beta cost
    }
    SUBCASE("star subroutine matches subset enumeration on random states") {
        int checked = 0;
        for (std::uint64_t seed = 200; seed < 230; ++seed) {
            GenParams p;
            p.seed = seed;
            p.terminals = 5;
            p.non_terminals = 2;
            p.radio.HTMAX = 6.0;
            p.ob_max = 5.0;
            p.area = 3000.0;
            auto inst = generate_instance(p);
            auto h = initial_heights(inst);
            auto cov = cover(inst, h);
            for (int v = 0; v < inst.size(); ++v) {
                if (!inst.is_terminal(v)) continue;
                for (double delta : doubling_deltas(inst, h[v])) {
                    auto fast = star_steiner_tc(inst, h, cov, v, delta);
                    auto slow = brute_force_star(inst, h, cov, v, delta);
                    CHECK(ratio_equal(fast.ratio, slow.ratio));
                    ++checked;
                }
            }
        }
        CHECK(checked > 100);
    }
}

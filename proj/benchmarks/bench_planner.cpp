#include <benchmark/benchmark.h>

#include "meshplan/cnd.hpp"
#include "meshplan/generator.hpp"
#include "meshplan/hybrid.hpp"
#include "meshplan/oracle.hpp"

namespace {

meshplan::PlanningInstance sized_instance(int terminals, int non_terminals) {
    meshplan::GenParams p;
    p.seed = 7;
    p.terminals = terminals;
    p.non_terminals = non_terminals;
    p.area = 6000.0;
    p.ob_model = meshplan::ObstructionModel::Hills;
    return meshplan::generate_instance(p);
}

void BM_Cover(benchmark::State& state) {
    const auto inst = sized_instance(static_cast<int>(state.range(0)), 5);
    const auto h = meshplan::initial_heights(inst);
    for (auto _ : state) benchmark::DoNotOptimize(meshplan::cover(inst, h));
}
BENCHMARK(BM_Cover)->Arg(10)->Arg(20)->Arg(40);

void BM_SteinerSolve(benchmark::State& state) {
    const auto inst = sized_instance(static_cast<int>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(meshplan::steiner_tc_solve(inst));
}
BENCHMARK(BM_SteinerSolve)->Arg(6)->Arg(10)->Arg(16);

void BM_CapacityInstall(benchmark::State& state) {
    const auto inst = sized_instance(static_cast<int>(state.range(0)), 4);
    const auto sol = meshplan::steiner_tc_solve(inst);
    const auto groups = meshplan::partition_groups(inst, sol.tree);
    for (auto _ : state)
        benchmark::DoNotOptimize(meshplan::install_capacity(inst, sol.tree, groups));
}
BENCHMARK(BM_CapacityInstall)->Arg(10)->Arg(20);

void BM_HybridDeploy(benchmark::State& state) {
    const auto inst = sized_instance(static_cast<int>(state.range(0)), 4);
    const auto sol = meshplan::steiner_tc_solve(inst);
    const auto groups = meshplan::partition_groups(inst, sol.tree);
    const auto cap = meshplan::install_capacity(inst, sol.tree, groups);
    for (auto _ : state)
        benchmark::DoNotOptimize(meshplan::deploy_hybrid(
            inst, sol.tree, cap, sol.heights, meshplan::HybridOrder::MpThenOmni));
}
BENCHMARK(BM_HybridDeploy)->Arg(10)->Arg(20);

void BM_OracleSmall(benchmark::State& state) {
    meshplan::GenParams p;
    p.seed = 11;
    p.terminals = static_cast<int>(state.range(0));
    p.non_terminals = 2;
    p.radio.HTMAX = 5.0;
    p.ob_max = 4.5;
    p.area = 3000.0;
    const auto inst = meshplan::generate_instance(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(meshplan::brute_force_steiner_tc(inst));
}
BENCHMARK(BM_OracleSmall)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();

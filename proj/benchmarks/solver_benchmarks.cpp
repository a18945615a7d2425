#include <benchmark/benchmark.h>

#include "jsp/bench.hpp"
#include "jsp/decompose.hpp"
#include "jsp/pipeline.hpp"
#include "jsp/solve.hpp"

namespace {

using namespace jsp;

void BM_RankOperations(benchmark::State& state) {
  const Instance inst = generate_instance(static_cast<int>(state.range(0)), 20, 1, 99, 1);
  const Strategy strategy{StrategyFamily::m_est, StrategyMode::static_plan};
  for (auto _ : state) benchmark::DoNotOptimize(rank_operations(inst, strategy));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RankOperations)->Arg(20)->Arg(50)->Arg(100)->Complexity();

void BM_SolveWindow(benchmark::State& state) {
  const Instance inst = generate_instance(static_cast<int>(state.range(0)), 5, 1, 99, 7);
  const SubProblem sp = build_subproblem(inst, inst.all_operations(), {}, {});
  const Budget budget = Budget::node_limit(static_cast<std::uint64_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_window(sp, budget).window_makespan);
}
BENCHMARK(BM_SolveWindow)->Args({10, 1000})->Args({20, 1000})->Args({20, 10000})->Unit(benchmark::kMillisecond);

void BM_Greedy(benchmark::State& state) {
  const Instance inst = generate_instance(static_cast<int>(state.range(0)), 20, 1, 99, 3);
  const SubProblem sp = build_subproblem(inst, inst.all_operations(), {}, {});
  for (auto _ : state) benchmark::DoNotOptimize(greedy_incumbent(sp).window_makespan);
}
BENCHMARK(BM_Greedy)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  const Instance inst = generate_instance(30, 10, 1, 99, 11);
  PipelineConfig cfg;
  cfg.strategy = {StrategyFamily::m_est, StrategyMode::dynamic_plan};
  cfg.windows = static_cast<int>(state.range(0));
  cfg.overlap_pct = 20;
  cfg.compression = true;
  cfg.total_budget = Budget::node_limit(2000);
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(inst, cfg).makespan);
}
BENCHMARK(BM_Pipeline)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_VerifySchedule(benchmark::State& state) {
  const Instance inst = generate_instance(100, 20, 1, 99, 5);
  const SubProblem sp = build_subproblem(inst, inst.all_operations(), {}, {});
  const Schedule sched = greedy_incumbent(sp).starts;
  for (auto _ : state) benchmark::DoNotOptimize(verify_schedule(inst, sched).ok());
}
BENCHMARK(BM_VerifySchedule)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "sprouts/canonizer.hpp"
#include "sprouts/engine.hpp"
#include "sprouts/movegen.hpp"
#include "sprouts/simplifier.hpp"

using namespace sprouts;

namespace {

constexpr const char* kLand = "0.1ab1bc2ca.ABC.}0.2ABC.}]12.AB.}AB.}]!";

void BM_Solve(benchmark::State& state) {
  const int spots = static_cast<int>(state.range(0));
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    Store store;
    Engine e(store);
    benchmark::DoNotOptimize(e.compute_win_loss(start_position(spots), 0));
    nodes = e.nodes();
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_Solve)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_Canonize(benchmark::State& state) {
  const Position p = parse(kLand);
  for (auto _ : state) benchmark::DoNotOptimize(canonize(p));
}
BENCHMARK(BM_Canonize);

void BM_Simplify(benchmark::State& state) {
  const Position p = parse("AL.}AL.BNMCMN.}D.COFPGQFOCM.}E.HRISJSIUKTKUIR.FQGP.}KT.}!");
  for (auto _ : state) benchmark::DoNotOptimize(simplify(p));
}
BENCHMARK(BM_Simplify);

void BM_ChildKeys(benchmark::State& state) {
  const Position p = parse(render(simplify(start_position(static_cast<int>(state.range(0))))));
  for (auto _ : state) benchmark::DoNotOptimize(child_keys(p));
}
BENCHMARK(BM_ChildKeys)->Arg(4)->Arg(8)->Arg(12);

void BM_CountTree(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_complete_tree(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CountTree)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

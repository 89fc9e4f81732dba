#include <benchmark/benchmark.h>

#include "nestkit/direct.hpp"
#include "nestkit/fixtures.hpp"
#include "nestkit/pairs.hpp"
#include "nestkit/recursive.hpp"
#include "nestkit/search.hpp"
#include "nestkit/verify.hpp"

using namespace nestkit;

namespace {

void BM_PairCounts(benchmark::State& state) {
  auto dev = weak_nest_pairs(static_cast<int>(state.range(0)));
  auto aug = augment(dev.design, dev.nesting);
  for (auto _ : state) benchmark::DoNotOptimize(pair_counts(aug.blocks, dev.nesting.w()));
}
BENCHMARK(BM_PairCounts)->Arg(50)->Arg(200);

void BM_WeakPairs(benchmark::State& state) {
  const int v = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto dev = weak_nest_pairs(v);
    benchmark::DoNotOptimize(verify_weak_nesting(dev.design, dev.nesting));
  }
}
BENCHMARK(BM_WeakPairs)->Arg(50)->Arg(200);

void BM_Strongify(benchmark::State& state) {
  const int v = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(strong_nest_pairs_1mod4(v));
}
BENCHMARK(BM_Strongify)->Arg(49)->Arg(101);

void BM_NestCyclicBase(benchmark::State& state) {
  auto sts = cyclic_sts(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nest_cyclic_base(sts));
}
BENCHMARK(BM_NestCyclicBase)->Arg(19)->Arg(37);

void BM_SearchStrong(benchmark::State& state) {
  auto design = fixture("strongE6").design;
  SearchOptions opt;
  opt.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_min_nesting(design, Mode::strong, 11, opt));
}
BENCHMARK(BM_SearchStrong)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  const int v = static_cast<int>(state.range(0));
  const Mode mode = state.range(1) ? Mode::strong : Mode::weak;
  for (auto _ : state) benchmark::DoNotOptimize(pipeline(v, mode));
}
BENCHMARK(BM_Pipeline)->Args({28, 0})->Args({28, 1})->Args({24, 0})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

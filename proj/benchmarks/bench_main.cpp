#include <benchmark/benchmark.h>

#include "autgroup/permutation.hpp"
#include "autgroup/reductions.hpp"
#include "support.hpp"

using namespace autgroup;
using namespace autgroup::testing;

static void BM_DecideIdentitySat(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const WpInstance inst = sat_to_wp(random_3cnf(rng, n, static_cast<std::size_t>(state.range(1))));
  for (auto _ : state) benchmark::DoNotOptimize(decide_identity(inst.automaton, inst.sequence));
  state.counters["symbols"] = static_cast<double>(inst.sequence.size());
}
BENCHMARK(BM_DecideIdentitySat)->Args({4, 8})->Args({6, 16})->Args({8, 32});

static void BM_DecideIdentityUnsat(benchmark::State& state) {
  const WpInstance inst = sat_to_wp(all_sign_patterns());
  for (auto _ : state) benchmark::DoNotOptimize(decide_identity(inst.automaton, inst.sequence));
}
BENCHMARK(BM_DecideIdentityUnsat);

static void BM_StreamApplyDoubling(benchmark::State& state) {
  const GAutomaton aut = f1();
  const Slp slp = doubling_chain(static_cast<std::size_t>(state.range(0)), "x");
  for (auto _ : state) benchmark::DoNotOptimize(stream_apply(aut, slp, {0}));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (state.range(0) - 1)));
}
BENCHMARK(BM_StreamApplyDoubling)->DenseRange(12, 20, 4);

static void BM_SlpDecideQbf(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const CwpInstance inst = qbf_to_cwp({n, random_3cnf(rng, n, 3)});
  for (auto _ : state) benchmark::DoNotOptimize(slp_decide_identity(inst.automaton, inst.slp));
}
BENCHMARK(BM_SlpDecideQbf)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_FindSigmaTriple(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_sigma_triple());
}
BENCHMARK(BM_FindSigmaTriple);
BENCHMARK_MAIN();

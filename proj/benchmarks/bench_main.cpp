#include <benchmark/benchmark.h>

#include <cstdint>

#include "seqelim/bandit.hpp"
#include "seqelim/bounds.hpp"
#include "seqelim/early_elimination.hpp"
#include "seqelim/prior.hpp"
#include "seqelim/rng.hpp"
#include "seqelim/ruin.hpp"
#include "seqelim/simulators.hpp"
#include "seqelim/special_functions.hpp"

namespace {

using namespace seqelim;

void BM_Philox(benchmark::State& state) {
  RngStream stream(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(stream());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Philox);

void BM_Uniform(benchmark::State& state) {
  RngStream stream(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(stream.uniform());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Uniform);

void BM_NormalCdf(benchmark::State& state) {
  double a = -6.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(std_normal_cdf(a));
    a = a > 6.0 ? -6.0 : a + 1e-3;
  }
}
BENCHMARK(BM_NormalCdf);

void BM_NormalQuantile(benchmark::State& state) {
  double p = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(std_normal_quantile(p));
    p = p > 0.999 ? 1e-6 : p + 1e-4;
  }
}
BENCHMARK(BM_NormalQuantile);

void BM_RuinWinProb(benchmark::State& state) {
  const RuinGameParams g{0.7, 0.3, 10};
  for (auto _ : state) benchmark::DoNotOptimize(ruin_win_prob(g));
}
BENCHMARK(BM_RuinWinProb);

void BM_PriorSample(benchmark::State& state) {
  RngStream stream(3, 0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_bandit_means(PriorSpec::uniform01(), n, stream));
}
BENCHMARK(BM_PriorSample)->Arg(5)->Arg(50);

// One replication per iteration: a fresh bandit from the prior, then one run.
void run_replication(benchmark::State& state, Algorithm algorithm, ElimConfig cfg) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t id = 0;
  for (auto _ : state) {
    RngStream stream(7, id++);
    const bool normal = algorithm == Algorithm::VT_Normal;
    auto means = sample_bandit_means(normal ? PriorSpec::std_normal() : PriorSpec::uniform01(), n, stream);
    auto instance = normal ? BanditInstance::normal(std::move(means), 1.0) : BanditInstance::bernoulli(std::move(means));
    benchmark::DoNotOptimize(run_algorithm(algorithm, instance, cfg, stream));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_VT(benchmark::State& state) { run_replication(state, Algorithm::VT, ElimConfig::with_k(10)); }
BENCHMARK(BM_VT)->Arg(5)->Arg(10);

void BM_VT_EE(benchmark::State& state) { run_replication(state, Algorithm::VT_EE, ElimConfig::with_k(10, 2)); }
BENCHMARK(BM_VT_EE)->Arg(5)->Arg(10);

void BM_PW(benchmark::State& state) { run_replication(state, Algorithm::PW, ElimConfig::with_k(42)); }
BENCHMARK(BM_PW)->Arg(5);

void BM_PW_EE(benchmark::State& state) { run_replication(state, Algorithm::PW_EE, ElimConfig::with_k(42, 3)); }
BENCHMARK(BM_PW_EE)->Arg(5);

void BM_VT_Normal(benchmark::State& state) { run_replication(state, Algorithm::VT_Normal, ElimConfig::with_c(8.0)); }
BENCHMARK(BM_VT_Normal)->Arg(5);

void BM_VtBoundsEstimate(benchmark::State& state) {
  for (auto _ : state) {
    McPlan plan;
    plan.replications = 20'000;
    plan.threads = 1;
    benchmark::DoNotOptimize(estimate_vt_bounds(PriorSpec::uniform01(), 10, 50, plan));
  }
}
BENCHMARK(BM_VtBoundsEstimate)->Unit(benchmark::kMillisecond);

void BM_NormalBoundsEstimate(benchmark::State& state) {
  for (auto _ : state) {
    McPlan plan;
    plan.replications = 20'000;
    plan.threads = 1;
    benchmark::DoNotOptimize(estimate_normal_bounds(5, 8.0, 1.0, plan));
  }
}
BENCHMARK(BM_NormalBoundsEstimate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

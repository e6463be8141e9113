#include <benchmark/benchmark.h>

#include "truthlab/instance_gen.hpp"
#include "truthlab/lowerbounds.hpp"
#include "truthlab/prng.hpp"
#include "truthlab/routing.hpp"
#include "truthlab/scheduling.hpp"

namespace {

using namespace truthlab;

void BM_OptimalMakespan(benchmark::State& state) {
  SplitMix64 rng(1);
  const auto inst = gen::random_scheduling(rng, state.range(0), 6, 1, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scheduling::optimal_makespan(inst));
  }
}
BENCHMARK(BM_OptimalMakespan)->Arg(2)->Arg(4);

void BM_NrExpectedMakespan(benchmark::State& state) {
  SplitMix64 rng(2);
  const auto inst = gen::random_scheduling(rng, 4, 6, 1, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scheduling::nr_expected_makespan(inst));
  }
}
BENCHMARK(BM_NrExpectedMakespan);

void BM_YaoSearch(benchmark::State& state) {
  const auto family = lowerbounds::yao_family(state.range(0), Rational(1, 100));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lowerbounds::min_expected_ratio_over_wmon_rules(family));
  }
}
BENCHMARK(BM_YaoSearch)->Arg(2)->Arg(3);

void BM_BayesSearch(benchmark::State& state) {
  const auto family = lowerbounds::bayes_family(Rational(1, 100));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lowerbounds::min_expected_ratio_over_bic_rules(family));
  }
}
BENCHMARK(BM_BayesSearch);

void BM_LexOptimalMechanism(benchmark::State& state) {
  const auto sd = routing::figure1_single_dim_instance(Rational(1, 100));
  for (auto _ : state) {
    benchmark::DoNotOptimize(routing::lex_optimal_mechanism(sd));
  }
}
BENCHMARK(BM_LexOptimalMechanism);

void BM_Lemma3Polytope(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(lowerbounds::lemma3_max_marginal(3, Rational(1, 100)));
  }
}
BENCHMARK(BM_Lemma3Polytope);

}  // namespace

BENCHMARK_MAIN();

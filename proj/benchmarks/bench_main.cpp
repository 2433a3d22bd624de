#include <benchmark/benchmark.h>

#include "sgof/bootstrap.hpp"
#include "sgof/design.hpp"
#include "sgof/estimate.hpp"
#include "sgof/sampling.hpp"

using namespace sgof;

namespace {

std::size_t width(const FamilySpec& f, std::size_t N) { return family_k_max_over_search(f, N - 1) + 1; }

void BM_DesignHypergeometric(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto cols = width(FamilySpec::poisson(), N);
  for (auto _ : state) benchmark::DoNotOptimize(design_hypergeometric(N, N / 10, cols));
}
BENCHMARK(BM_DesignHypergeometric)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_DesignPoissonFn(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto cols = width(FamilySpec::scale_free(), N);
  for (auto _ : state) benchmark::DoNotOptimize(design_poisson_fn(0.3, 813.0 / 6000, cols, cols));
}
BENCHMARK(BM_DesignPoissonFn)->Arg(6000)->Unit(benchmark::kMillisecond);

void BM_ConfigurationModel(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_null_graph(FamilySpec::poisson(), 3.0, N, ++seed, {}));
}
BENCHMARK(BM_ConfigurationModel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_EstimateTheta(benchmark::State& state) {
  const auto family = state.range(0) == 0 ? FamilySpec::poisson() : FamilySpec::scale_free();
  const std::size_t N = 10000;
  const auto g = build_null_graph(FamilySpec::poisson(), 3.0, N, 1, {});
  const auto sample = draw_sample(g, SamplingDesign::srs(1000), 2);
  const auto x = design_for(SamplingDesign::srs(1000), N, width(family, N));
  const auto problem = make_problem(sample, x, family, false);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_theta(problem));
  state.SetLabel(family.name());
}
BENCHMARK(BM_EstimateTheta)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BootstrapDistribution(benchmark::State& state) {
  BootstrapConfig c;
  c.population_size = 2000;
  c.design = SamplingDesign::srs(400);
  c.replicates = 50;
  c.seed = 3;
  c.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_distribution(3.0, FamilySpec::poisson(), c));
}
BENCHMARK(BM_BootstrapDistribution)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();

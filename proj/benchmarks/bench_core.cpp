#include <benchmark/benchmark.h>

#include "hatano/bands.hpp"
#include "hatano/discriminant.hpp"
#include "hatano/spectrum.hpp"
#include "hatano/transfer.hpp"

using namespace hatano;

namespace {

PotentialSample ring(std::int64_t n) {
  return sample_potential(DistributionSpec::uniform(0.0, 1.0), static_cast<std::size_t>(n), 17);
}

Precision precision_of(std::int64_t p) { return p ? Precision::extended : Precision::standard; }

void BM_EvalDisc(benchmark::State& state) {
  const PotentialSample s = ring(state.range(0));
  const Precision p = precision_of(state.range(1));
  double E = 0.31;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_disc_deriv(s, E, p));
    E += 1e-9;
  }
}
BENCHMARK(BM_EvalDisc)->ArgsProduct({{60, 240}, {0, 1}});

void BM_BandStructure(benchmark::State& state) {
  const PotentialSample s = ring(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(band_structure(s, Precision::extended));
}
BENCHMARK(BM_BandStructure)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_EigvalsG(benchmark::State& state) {
  const PotentialSample s = ring(state.range(0));
  const BandStructure bs = band_structure(s, Precision::extended);
  const double g = static_cast<double>(state.range(1)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(eigvals_g(s, bs, SpectralParams::make(g, s.n)));
}
BENCHMARK(BM_EigvalsG)->ArgsProduct({{20, 60}, {10, 50}})->Unit(benchmark::kMillisecond);

void BM_LyapunovMc(benchmark::State& state) {
  const auto spec = DistributionSpec::uniform(0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(lyapunov_mc(spec, 0.5, state.range(0), 4, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 4);
}
BENCHMARK(BM_LyapunovMc)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "eemx/fixtures.hpp"
#include "eemx/model_space.hpp"
#include "eemx/simulate.hpp"
#include "eemx/vi_select.hpp"
#include "eemx/vr_select.hpp"

using namespace eemx;

namespace {

Dataset random_design(std::size_t n, std::size_t p) {
  FixtureSpec s;
  s.kind = FixtureKind::DuplicatePair;
  s.n = n;
  s.k = p + 1;
  s.parameter = 0.3;
  s.seed = 5;
  return make_fixture(s);
}

void BM_SymEigen(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto ds = random_design(4 * p, p);
  const Matrix corr = correlation_matrix(standardize(ds, full_model(ds)).z_matrix);
  for (auto _ : state) benchmark::DoNotOptimize(sym_eigen(corr));
}
BENCHMARK(BM_SymEigen)->Arg(4)->Arg(12)->Arg(32);

void BM_BruteForce(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto ds = random_design(60, p);
  ControlParams prm;
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_dcd(ds, prm));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(enumeration_count(p + 1, p + 1)));
}
BENCHMARK(BM_BruteForce)->Arg(4)->Arg(8)->Arg(11);

void BM_ViAlgorithm(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto ds = random_design(60, p);
  for (auto _ : state) benchmark::DoNotOptimize(vi_algorithm(ds, 0.9, 0.9));
}
BENCHMARK(BM_ViAlgorithm)->Arg(4)->Arg(8)->Arg(11);

void BM_VrAlgorithm(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto ds = random_design(60, p);
  const ControlParams prm;
  for (auto _ : state) benchmark::DoNotOptimize(vr_algorithm(ds, prm));
}
BENCHMARK(BM_VrAlgorithm)->Arg(4)->Arg(8)->Arg(11);

void BM_PccFrequencyStudy(benchmark::State& state) {
  SimConfig cfg;
  cfg.correlation = published_gasoline_correlation();
  cfg.trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pcc_frequency_study(cfg));
}
BENCHMARK(BM_PccFrequencyStudy)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

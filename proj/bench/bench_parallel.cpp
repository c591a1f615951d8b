// Serial reference paths against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "oddity/batch.hpp"
#include "oddity/generator.hpp"

using namespace oddity;

namespace {

std::array<PanelData, kPanels> panels_of(Concept c, std::uint64_t seed) {
  const GeneratedProblem g = generate(c, seed);
  std::array<PanelData, kPanels> out;
  for (std::size_t k = 0; k < kPanels; ++k) out[k] = prepare_panel(g.panels[k], RunConfig{});
  return out;
}

const std::vector<LabeledProblem>& problems() {
  static const std::vector<LabeledProblem> all = [] {
    std::vector<LabeledProblem> out;
    for (Concept c : all_concepts()) {
      for (auto& g : generate_suite(c, 12, 1000)) {
        out.push_back({std::to_string(g.seed), std::string(concept_name(c)), std::move(g.panels), g.odd_index});
      }
    }
    return out;
  }();
  return all;
}

void BM_FeatureMatrixSerial(benchmark::State& state) {
  const auto data = panels_of(Concept::Holes, 7);
  const RunConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_feature_matrix_serial(std::span<const PanelData, kPanels>(data), cfg));
  }
}
BENCHMARK(BM_FeatureMatrixSerial)->Unit(benchmark::kMicrosecond);

void BM_FeatureMatrixOpenMP(benchmark::State& state) {
  const auto data = panels_of(Concept::Holes, 7);
  const RunConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_feature_matrix(std::span<const PanelData, kPanels>(data), cfg));
  }
}
BENCHMARK(BM_FeatureMatrixOpenMP)->Unit(benchmark::kMicrosecond);

void BM_SolveBatchSerial(benchmark::State& state) {
  const auto& ps = problems();
  const RunConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(solve_batch_serial(ps, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ps.size()));
}
BENCHMARK(BM_SolveBatchSerial)->Unit(benchmark::kMillisecond);

void BM_SolveBatchOpenMP(benchmark::State& state) {
  const auto& ps = problems();
  RunConfig cfg;
  cfg.parallelism = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_batch(ps, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ps.size()));
}
BENCHMARK(BM_SolveBatchOpenMP)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

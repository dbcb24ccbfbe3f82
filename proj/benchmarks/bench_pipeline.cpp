#include <benchmark/benchmark.h>

#include <map>

#include "citeval/analytics.hpp"
#include "citeval/baselines.hpp"
#include "citeval/indicators.hpp"
#include "citeval/synth.hpp"

namespace {

citeval::SynthSpec spec_for(std::int64_t n_pubs) {
  citeval::SynthSpec spec;
  spec.seed = 7;
  spec.n_pubs = static_cast<std::size_t>(n_pubs);
  spec.n_groups = 20;
  spec.edge_budget = 8 * spec.n_pubs;
  spec.multi_sc_fraction = 0.1;
  return spec;
}

const citeval::CitationCorpus& corpus_for(std::int64_t n_pubs) {
  static std::map<std::int64_t, citeval::CitationCorpus> cache;
  auto it = cache.find(n_pubs);
  if (it == cache.end()) it = cache.emplace(n_pubs, citeval::generate(spec_for(n_pubs))).first;
  return it->second;
}

void BM_Generate(benchmark::State& state) {
  const auto spec = spec_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(citeval::generate(spec).edge_count());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.edge_budget));
}

void BM_Baselines(benchmark::State& state) {
  const auto& corpus = corpus_for(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        citeval::compute_group_baselines(corpus, citeval::Population::cited_only).groups.size());
  }
}

void BM_ComputeAll(benchmark::State& state) {
  const auto& corpus = corpus_for(state.range(0));
  const auto threads = static_cast<unsigned>(state.range(1));
  citeval::ModelConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(citeval::compute_all(corpus, cfg, threads).scores.size());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.edge_count()));
}

void BM_Analyze(benchmark::State& state) {
  const auto& corpus = corpus_for(state.range(0));
  const auto sheet = citeval::make_score_sheet(corpus, citeval::compute_all(corpus, citeval::ModelConfig{}));
  citeval::AnalysisOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(citeval::analyze(sheet, opts).top_sets.size());
}

}  // namespace

BENCHMARK(BM_Generate)->Arg(10'000)->Arg(50'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Baselines)->Arg(10'000)->Arg(50'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComputeAll)->Args({50'000, 1})->Args({50'000, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Analyze)->Arg(50'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

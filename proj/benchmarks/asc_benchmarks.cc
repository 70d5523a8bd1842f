#include <benchmark/benchmark.h>

#include "asc/embeddings.h"
#include "asc/llda.h"
#include "asc/metrics.h"
#include "asc/rng.h"
#include "asc/syntax_rules.h"
#include "synthetic.h"

namespace asc {
namespace {

void BM_LldaSweep(benchmark::State& state) {
  const auto corpus = synthetic::MakePlantedTopicCorpus(1, static_cast<int>(state.range(0)));
  LldaConfig config;
  config.iterations = 10;
  long tokens = 0;
  for (const LldaDocument& d : corpus.documents) tokens += static_cast<long>(d.tokens.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitLlda(corpus.documents, corpus.topics, config));
  }
  state.SetItemsProcessed(state.iterations() * tokens * config.iterations);
}
BENCHMARK(BM_LldaSweep)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SgnsEpoch(benchmark::State& state) {
  const auto corpus = synthetic::MakeTwoClusterCorpus(1, 2000);
  SgnsConfig config;
  config.dim = static_cast<int>(state.range(0));
  config.epochs = 1;
  config.min_count = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(TrainSgns(corpus, config));
  }
  state.SetItemsProcessed(state.iterations() * 2000 * 8);
}
BENCHMARK(BM_SgnsEpoch)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_RocAuc(benchmark::State& state) {
  Rng rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> scores(n);
  std::vector<char> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = UniformDouble(rng);
    labels[i] = static_cast<char>(i % 2);
  }
  for (auto _ : state) benchmark::DoNotOptimize(RocAuc(scores, labels));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RocAuc)->Arg(1000)->Arg(100000);

void BM_ModifiersFor(benchmark::State& state) {
  synthetic::TemplatedOptions options;
  options.num_reviews = 200;
  const Dataset d = synthetic::MakeTemplatedAbsa(4, options);
  std::vector<DependencyGraph> graphs;
  for (const Review& r : d.reviews) graphs.emplace_back(r.tokens);
  long calls = 0;
  for (auto _ : state) {
    for (const DependencyGraph& g : graphs) {
      for (int i = 1; i <= g.size(); ++i) {
        benchmark::DoNotOptimize(ModifiersFor(g, i));
        ++calls;
      }
    }
  }
  state.SetItemsProcessed(calls);
}
BENCHMARK(BM_ModifiersFor);

}  // namespace
}  // namespace asc

BENCHMARK_MAIN();

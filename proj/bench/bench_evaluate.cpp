// Serial reference against the OpenMP runner on the fixture corpus,
// replicated so each run has enough work to spread across threads.
#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "strucbench/corpus.hpp"
#include "strucbench/evaluate.hpp"

namespace {

constexpr int kCopies = 8;

struct Workload {
  std::vector<strucbench::CorpusItem> corpus;
  std::vector<strucbench::PredictionRecord> predictions;
};

const Workload& workload() {
  static const Workload w = [] {
    const std::string data = STRUCBENCH_TEST_DATA;
    const auto corpus = strucbench::load_corpus(data + "/fixture_corpus.jsonl").items;
    const auto preds = strucbench::load_predictions(data + "/fixture_planted.jsonl").items;
    Workload out;
    for (int copy = 0; copy < kCopies; ++copy) {
      const std::string suffix = "#" + std::to_string(copy);
      for (auto item : corpus) {
        item.id += suffix;
        out.corpus.push_back(std::move(item));
      }
      for (auto p : preds) {
        p.id += suffix;
        out.predictions.push_back(std::move(p));
      }
    }
    return out;
  }();
  return w;
}

void BM_EvaluateSerial(benchmark::State& state) {
  const Workload& w = workload();
  for (auto _ : state) {
    benchmark::DoNotOptimize(strucbench::evaluate_serial(w.corpus, w.predictions, {}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(w.corpus.size()));
}
BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_EvaluateParallel(benchmark::State& state) {
  const Workload& w = workload();
  strucbench::EvaluateOptions options;
  options.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(strucbench::evaluate(w.corpus, w.predictions, options));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(w.corpus.size()));
}
BENCHMARK(BM_EvaluateParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();

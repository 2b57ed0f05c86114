#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "gdr/eval.hpp"
#include "gdr/refine.hpp"

using namespace gdr;

namespace {

std::vector<std::string> sample_corpus(int n) {
  std::vector<std::string> corpus;
  corpus.reserve(n);
  for (int i = 0; i < n; ++i) {
    corpus.push_back("thread " + std::to_string(i % 13) +
                     " talks about topic " + std::to_string(i % 7) +
                     " with detail " + std::to_string(i) +
                     " and some shared filler words at the end");
  }
  return corpus;
}

}  // namespace

static void BM_Rouge2Pair(benchmark::State& state) {
  std::string a =
      "the quick brown fox jumps over the lazy dog near the river bank";
  std::string b =
      "a quick brown fox leaped over a sleeping dog by the river path";
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval::rouge2_f(a, b));
  }
}
BENCHMARK(BM_Rouge2Pair);

// pairwise mean over n sampled docs: n*(n-1)/2 pair evaluations
static void BM_PairwiseDiversity(benchmark::State& state) {
  auto corpus = sample_corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval::mean_pairwise_diversity(
        corpus, static_cast<int>(state.range(0)), 7));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) *
                          (state.range(0) - 1) / 2);
}
BENCHMARK(BM_PairwiseDiversity)->Arg(64)->Arg(256)->Arg(1024);

static void BM_Drift(benchmark::State& state) {
  std::string x(static_cast<std::size_t>(state.range(0)), 'a');
  std::string y = x;
  y[y.size() / 2] = 'b';
  y += "tail";
  for (auto _ : state) {
    benchmark::DoNotOptimize(refine::drift(x, y));
  }
}
BENCHMARK(BM_Drift)->Arg(64)->Arg(512)->Arg(2048);

static void BM_HashedEmbedding(benchmark::State& state) {
  std::string doc =
      "a medium length chat message with enough tokens to hash into the "
      "feature space more than a few times over";
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval::hashed_embedding(doc, 256));
  }
}
BENCHMARK(BM_HashedEmbedding);

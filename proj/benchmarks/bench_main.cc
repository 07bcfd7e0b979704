/*
 * Copyright 2026 The lxq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <random>

#include "lxq/concordance.h"
#include "lxq/exercise.h"
#include "lxq/index.h"
#include "lxq/pattern.h"
#include "lxq/stats.h"
#include "random_corpus.h"

namespace lxq {
namespace {

std::shared_ptr<const Corpus> Synthetic(std::size_t tokens) {
  static std::map<std::size_t, std::shared_ptr<const Corpus>> cache;
  auto& slot = cache[tokens];
  if (!slot) slot = std::make_shared<const Corpus>(testing::SyntheticCorpus(tokens, 5));
  return slot;
}

const CorpusIndex& SyntheticIndex(std::size_t tokens) {
  static std::map<std::size_t, std::unique_ptr<CorpusIndex>> cache;
  auto& slot = cache[tokens];
  if (!slot) slot = std::make_unique<CorpusIndex>(CorpusIndex::Build(Synthetic(tokens)));
  return *slot;
}

void BM_IndexBuild(benchmark::State& state) {
  const auto corpus = Synthetic(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(CorpusIndex::Build(corpus));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IndexBuild)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void RunFirstPage(benchmark::State& state, const char* dsl, bool scan) {
  const auto& index = SyntheticIndex(static_cast<std::size_t>(state.range(0)));
  const PatternQuery q = ParseQuery(dsl);
  for (auto _ : state) benchmark::DoNotOptimize(RunQuery(index, q, 0, 50, {.scan_only = scan, .context_window = std::nullopt}));
}

void BM_QueryTwoSlot(benchmark::State& state) {
  RunFirstPage(state, R"([lemma="avoir"] ![trait="participe passé"])", false);
}
BENCHMARK(BM_QueryTwoSlot)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_QueryTwoSlotScan(benchmark::State& state) {
  RunFirstPage(state, R"([lemma="avoir"] ![trait="participe passé"])", true);
}
BENCHMARK(BM_QueryTwoSlotScan)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_QueryStarGap(benchmark::State& state) {
  RunFirstPage(state, R"([lemma="avoir"] [pos!="ponct"]* ![error="yes"])", false);
}
BENCHMARK(BM_QueryStarGap)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_GenerateItems(benchmark::State& state) {
  const auto& index = SyntheticIndex(100'000);
  const PatternQuery q = ParseQuery(R"(![trait="participe passé"])");
  ExerciseOptions opts;
  opts.count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    ++opts.seed;
    benchmark::DoNotOptimize(GenerateItems(index, q, opts));
  }
}
BENCHMARK(BM_GenerateItems)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_BuildProfile(benchmark::State& state) {
  const auto corpus = Synthetic(1'000'000);
  for (auto _ : state) benchmark::DoNotOptimize(BuildProfile(*corpus, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildProfile)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lxq

BENCHMARK_MAIN();

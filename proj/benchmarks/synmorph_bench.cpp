// Apache License, Version 2.0, refer to LICENSE.txt
#include <benchmark/benchmark.h>

#include "synmorph/builder.hpp"
#include "synmorph/demo.hpp"
#include "synmorph/matcher.hpp"
#include "synmorph/morphemes.hpp"
#include "synmorph/transforms.hpp"

namespace {

using namespace synmorph;

const DemoCorpus& corpus_of(std::size_t pairs) {
  static std::map<std::size_t, DemoCorpus> cache;
  auto it = cache.find(pairs);
  if (it == cache.end()) {
    it = cache.emplace(pairs, make_demo_corpus({pairs, 0, 3})).first;
  }
  return it->second;
}

const MorphemeInventory& inventory() {
  static const MorphemeInventory inv = build_inventory(default_patterns(), {}, {}, 3);
  return inv;
}

void BM_ScanCorpus(benchmark::State& state) {
  const DemoCorpus& corpus = corpus_of(static_cast<std::size_t>(state.range(0)));
  const auto patterns = default_patterns();
  for (auto _ : state) {
    ScanResult scan = scan_corpus(corpus.train, patterns, 3);
    benchmark::DoNotOptimize(scan.sites.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScanCorpus)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_BuildDataset(benchmark::State& state) {
  const DemoCorpus& corpus = corpus_of(static_cast<std::size_t>(state.range(0)));
  const auto patterns = default_patterns();
  BuildConfig config;
  config.seed = 3;
  config.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    BuildResult result = build_dataset(corpus.train, {}, patterns, inventory(), config);
    benchmark::DoNotOptimize(result.train_src.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildDataset)
    ->Args({5000, 1})
    ->Args({20000, 1})
    ->Args({100000, 1})
    ->Args({100000, 2})
    ->Args({100000, 4})
    ->Unit(benchmark::kMillisecond);

void BM_TransformSite(benchmark::State& state) {
  const DemoCorpus& corpus = corpus_of(5000);
  const auto patterns = default_patterns();
  const ScanResult scan = scan_corpus(corpus.train, patterns, 3);
  std::map<std::string, const PatternPair*> by_id;
  for (const PatternPair& p : patterns) by_id[p.id] = &p;
  std::map<std::int64_t, const AnnotatedSentencePair*> by_pair;
  for (const auto& p : corpus.train) by_pair[p.pair_id] = &p;
  for (auto _ : state) {
    for (const MatchSite& site : scan.sites) {
      auto record = transform_site(*by_pair.at(site.pair_id), site, *by_id.at(site.pattern_id),
                                   inventory().require(site.pattern_id), Variant::Surface);
      benchmark::DoNotOptimize(record);
    }
  }
  state.SetItemsProcessed(state.iterations() * scan.sites.size());
}
BENCHMARK(BM_TransformSite)->Unit(benchmark::kMillisecond);

void BM_BuildInventory(benchmark::State& state) {
  const DemoCorpus& corpus = corpus_of(5000);
  std::vector<std::string> tokens;
  for (const auto& pair : corpus.train) {
    for (const Token& t : pair.src.tokens) tokens.push_back(t.form);
    for (const Token& t : pair.trg.tokens) tokens.push_back(t.form);
  }
  const auto patterns = default_patterns();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    MorphemeInventory inv = build_inventory(patterns, tokens, corpus.vocab, seed++);
    benchmark::DoNotOptimize(inv.by_pattern.size());
  }
}
BENCHMARK(BM_BuildInventory)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

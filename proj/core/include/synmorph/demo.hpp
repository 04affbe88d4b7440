// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "synmorph/corpus.hpp"

namespace synmorph {

// Deterministic template-generated DE/EN parallel corpus with dependency
// annotations and word alignments. Covers every shipped pattern: all eleven
// prepositions, cardinals, intensity/negation modifiers (single and doubled)
// and plain noun sentences for compound insertion.
struct DemoOptions {
  std::size_t train_pairs = 5000;
  std::size_t test_pairs = 600;
  std::uint64_t seed = 1;
};

struct DemoCorpus {
  std::vector<AnnotatedSentencePair> train;
  std::vector<AnnotatedSentencePair> test;
  std::vector<std::string> vocab;  // pseudo-subword exclusion entries
};

DemoCorpus make_demo_corpus(const DemoOptions& options);

/// Writes <prefix>.src.conllu, <prefix>.trg.conllu and <prefix>.align.
void write_corpus_files(const std::vector<AnnotatedSentencePair>& pairs,
                        const std::string& prefix);

}  // namespace synmorph

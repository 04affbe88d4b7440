// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "synmorph/corpus.hpp"
#include "synmorph/patterns.hpp"
#include "synmorph/rng.hpp"

namespace synmorph {

// One insertion site. Positions are 0-based within the token sequences, so
// they can be checked directly against the alignment set.
struct MatchSite {
  std::int64_t pair_id = 0;
  std::string pattern_id;
  std::optional<int> src_trigger;  // first token of the trigger span
  int src_trigger_len = 0;         // tokens covered, including a medial comma
  std::optional<int> trg_trigger;
  int trg_trigger_len = 0;
  int src_base = -1;
  int trg_base = -1;
};

/// First match in left-to-right source order; empty when trigger, dependency,
/// POS or alignment checks fail. Trigger lemma sequences may be interrupted by
/// a single comma token ("sehr , sehr").
std::optional<MatchSite> match_pattern(const AnnotatedSentencePair& pair,
                                       const PatternPair& pattern);

/// Uniformly samples one source NOUN that is 1-to-1 aligned to a target NOUN.
std::optional<MatchSite> match_compound_site(const AnnotatedSentencePair& pair,
                                             const PatternPair& pattern, Rng& rng);

struct ScanResult {
  std::vector<MatchSite> sites;                    // at most one per pair, pair order
  std::map<std::string, std::size_t> match_counts; // per pattern id
};

/// Tries patterns in config order per pair; the first match wins. All
/// random-noun patterns form one group: an eligible pair is assigned to a
/// uniformly drawn member, so the caps can shape their frequencies later.
/// Deterministic in the seed, independent of the thread count.
ScanResult scan_corpus(const std::vector<AnnotatedSentencePair>& pairs,
                       const std::vector<PatternPair>& patterns, std::uint64_t seed,
                       unsigned threads = 1);

}  // namespace synmorph

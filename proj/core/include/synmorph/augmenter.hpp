// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "synmorph/builder.hpp"
#include "synmorph/corpus.hpp"
#include "synmorph/morphemes.hpp"
#include "synmorph/patterns.hpp"

namespace synmorph {

enum class SubstitutionKind { PrepSwap, CardinalToTwo, ModifierInsert };

std::string to_string(SubstitutionKind k);

// One substituted sentence pair, aimed at a specific pattern. The swapped or
// inserted material is kept so the fallback scorer can price the edit.
struct AugCandidate {
  std::string id;
  std::int64_t origin_pair_id = 0;
  SubstitutionKind kind = SubstitutionKind::PrepSwap;
  std::string target_pattern_id;
  AnnotatedSentencePair pair;
  std::vector<std::string> src_old, src_new;
  std::vector<std::string> trg_old, trg_new;
  std::optional<double> score;  // lower = more natural
};

/// Swaps aligned prepositions into every other prepositional pattern,
/// rewrites aligned cardinals to the cardinal patterns' trigger, and inserts
/// modifier pairs before aligned adjectives.
std::vector<AugCandidate> generate_candidates(const AnnotatedSentencePair& pair,
                                              const std::vector<PatternPair>& patterns);

/// Bounds the pool per origin pair (seeded sampling, input order preserved).
void cap_candidates(std::vector<AugCandidate>& candidates, std::size_t per_origin_cap,
                    std::uint64_t seed);

struct ScoreEntry {
  double src_delta = 0.0;
  double trg_delta = 0.0;
};

/// TSV columns: candidate_id, src_delta, trg_delta.
std::map<std::string, ScoreEntry> parse_scores(std::istream& in);
std::map<std::string, ScoreEntry> load_scores(const std::string& path);

// Fallback fluency proxy: corpus unigram surprisal delta of the edited tokens.
class UnigramScorer {
 public:
  explicit UnigramScorer(const std::vector<AnnotatedSentencePair>& corpus);
  double score(const AugCandidate& candidate) const;

 private:
  double surprisal(const std::unordered_map<std::string, std::size_t>& counts, std::size_t total,
                   const std::string& token) const;
  std::unordered_map<std::string, std::size_t> src_counts_;
  std::unordered_map<std::string, std::size_t> trg_counts_;
  std::size_t src_total_ = 0;
  std::size_t trg_total_ = 0;
};

/// Externally scored candidates get (src_delta + trg_delta) / 2; the rest fall
/// back to the unigram scorer. Score-file ids that match no candidate are
/// logged as warnings.
void attach_scores(std::vector<AugCandidate>& candidates,
                   const std::map<std::string, ScoreEntry>& scores, const UnigramScorer* fallback);

// One balanced-test entry: a surface record plus its abstract sibling.
struct BalancedSite {
  TestRecord surface;
  std::optional<TestRecord> abstract_rec;
  bool augmented = false;
  double score = 0.0;
  std::string candidate_id;
  std::string bucket;
};

/// Matches and transforms each candidate through the standard pipeline;
/// candidates whose target pattern no longer matches are dropped.
std::vector<BalancedSite> realize_candidates(const std::vector<AugCandidate>& candidates,
                                             const std::vector<PatternPair>& patterns,
                                             const MorphemeInventory& inventory,
                                             const Manifest& manifest, bool abstract_variants,
                                             const VowelSet& vowels = VowelSet());

/// Per (pattern, bucket): originals first, then augmented entries ascending by
/// score, until the cap. Groups are emitted sorted by pattern id and bucket.
std::vector<BalancedSite> assemble_balanced(const std::vector<BalancedSite>& originals,
                                            const std::vector<BalancedSite>& augmented,
                                            std::size_t bucket_cap);

}  // namespace synmorph

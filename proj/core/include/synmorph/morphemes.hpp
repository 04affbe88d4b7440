// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "synmorph/patterns.hpp"
#include "synmorph/rng.hpp"

namespace synmorph {

// Per-side sampling alphabet; entries are single code points stored as UTF-8.
struct MorphemeAlphabet {
  std::vector<std::string> consonants;
  std::vector<std::string> vowels;

  static MorphemeAlphabet german();   // vowels include ä ö ü
  static MorphemeAlphabet english();
  static MorphemeAlphabet from_strings(std::string_view consonants, std::string_view vowels);
};

enum class StartClass { Consonant, Vowel, Random };

/// Random consonant/vowel alternating string with a sampled length in
/// [min_len, max_len].
std::string generate_morpheme(Rng& rng, std::size_t min_len, std::size_t max_len, StartClass start,
                              const MorphemeAlphabet& alphabet);

/// True iff every adjacent character pair alternates between the two alphabets.
bool is_cv_alternating(std::string_view s, const MorphemeAlphabet& alphabet);

// Case-insensitive absence oracle: a candidate passes when it is not an entry
// of the exclusion vocabulary and not a substring of any corpus token.
class AbsenceChecker {
 public:
  AbsenceChecker(const std::vector<std::string>& corpus_tokens,
                 const std::vector<std::string>& vocab);

  bool is_absent(std::string_view candidate) const;

  /// Consonant skeletons (c1c2c3) of all 5-character CVCVC corpus tokens.
  /// Harmony triples must avoid these: their realizations would otherwise be
  /// indistinguishable from real words at evaluation time.
  const std::unordered_set<std::string>& corpus_skeletons() const { return skeletons_; }

 private:
  std::string haystack_;  // folded corpus tokens joined with '\n'
  std::unordered_set<std::string> vocab_;
  std::unordered_set<std::string> skeletons_;
};

// The full morpheme assignment for one pattern pair.
struct PatternMorphemes {
  Side surface_side = Side::Source;  // where the bound pieces live
  // Surface variant: bound pieces on the phenomenon side (compound morpheme,
  // infix, or circumfix prefix+suffix), plus an isolated morpheme opposite.
  std::vector<std::string> bound;
  std::string triple;  // 3 consonants, vowel-harmony patterns only
  std::string isolated;
  // Abstract variant: placeholder token plus its own isolated morpheme.
  std::string abstract_token;
  std::string abstract_isolated;

  std::vector<std::string> all_surfaces() const;
  /// Morphemes that end up in the source sentence for the given variant.
  std::vector<std::string> source_side_surfaces(bool abstract_variant) const;
};

struct MorphemeInventory {
  std::uint64_t seed = 0;
  std::map<std::string, PatternMorphemes> by_pattern;

  const PatternMorphemes& require(const std::string& pattern_id) const;
  bool has(const std::string& pattern_id) const { return by_pattern.count(pattern_id) > 0; }
};

struct InventoryConfig {
  MorphemeAlphabet source_alphabet = MorphemeAlphabet::german();
  MorphemeAlphabet target_alphabet = MorphemeAlphabet::english();
  std::size_t min_len = 4;
  std::size_t max_len = 6;
  std::size_t circumfix_piece_len = 3;
  std::size_t max_attempts = 10000;
};

/// Rejection-samples one morpheme set per pattern, deterministic in the seed.
/// Every sampled surface is absent from corpus and vocabulary, pairwise
/// distinct, free of mutual substrings, and no 5-character morpheme matches an
/// assigned vowel-harmony consonant skeleton.
MorphemeInventory build_inventory(const std::vector<PatternPair>& patterns,
                                  const std::vector<std::string>& corpus_tokens,
                                  const std::vector<std::string>& vocab, std::uint64_t seed,
                                  const InventoryConfig& config = {});

/// TSV columns: pattern_id, variant, slot, side, surface.
void write_inventory(const MorphemeInventory& inventory, std::ostream& out);
void write_inventory_file(const MorphemeInventory& inventory, const std::string& path);
MorphemeInventory parse_inventory(std::istream& in);
MorphemeInventory load_inventory(const std::string& path);

/// One entry per non-empty line; '#' comments skipped.
std::vector<std::string> load_wordlist(const std::string& path);

}  // namespace synmorph

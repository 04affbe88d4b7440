// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace synmorph {

enum class Phenomenon {
  Compound,
  Circumfix,
  Infix,
  VowelHarmony,
  RedupPartial,
  RedupTriple,
  RedupFull,
};

enum class Side { Source, Target };

enum class BaseSelector {
  PrepObject,             // preposition trigger; base = noun of the PP
  CardinalHead,           // cardinal trigger; base = noun it modifies
  AdjectiveAfterModifier, // intensity/negation trigger; base = the adjective
  RandomAlignedNoun,      // no trigger; base sampled among aligned nouns
};

Side other_side(Side s);

std::string to_string(Phenomenon p);
std::string to_string(Side s);
std::string to_string(BaseSelector s);
Phenomenon phenomenon_from_string(std::string_view s);
Side side_from_string(std::string_view s);
BaseSelector selector_from_string(std::string_view s);

// A consecutive lemma sequence; multi-lemma triggers ("sehr sehr") may have a
// single comma token between the elements.
struct TriggerSpec {
  std::vector<std::string> lemmas;
  bool empty() const { return lemmas.empty(); }
};

struct PatternPair {
  std::string id;  // e.g. "circumfix_1"
  Phenomenon phenomenon = Phenomenon::Compound;
  Side surface_side = Side::Source;  // where the bound phenomenon is realized
  TriggerSpec src_trigger;
  TriggerSpec trg_trigger;
  BaseSelector base_selector = BaseSelector::RandomAlignedNoun;
  std::optional<std::size_t> max_train_insertions;

  bool is_reduplication() const;
  /// "@CIRCUMFIX_1@", "@FULL_REDUPLICATION@", ... derived from phenomenon and
  /// the numeric suffix of the pattern id.
  std::string abstract_token() const;
};

/// TSV columns: id, phenomenon, surface_side, src_lemmas, trg_lemmas,
/// base_selector, max_train_insertions. '#' comments and a header row are
/// accepted; "-" or empty means no cap / no trigger.
std::vector<PatternPair> parse_patterns(std::istream& in);
std::vector<PatternPair> load_patterns(const std::string& path);
void write_patterns(const std::vector<PatternPair>& patterns, std::ostream& out);

/// The configuration shipped with the toolkit: 4 circumfix, 4 infix,
/// 4 vowel-harmony, 3 reduplication and 5 compound pattern pairs.
std::vector<PatternPair> default_patterns();

}  // namespace synmorph

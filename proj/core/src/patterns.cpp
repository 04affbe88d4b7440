// Apache License, Version 2.0, refer to LICENSE.txt
#include "synmorph/patterns.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "synmorph/errors.hpp"
#include "synmorph/text.hpp"

namespace synmorph {

Side other_side(Side s) { return s == Side::Source ? Side::Target : Side::Source; }

std::string to_string(Phenomenon p) {
  switch (p) {
    case Phenomenon::Compound: return "compound";
    case Phenomenon::Circumfix: return "circumfix";
    case Phenomenon::Infix: return "infix";
    case Phenomenon::VowelHarmony: return "vowel_harmony";
    case Phenomenon::RedupPartial: return "redup_partial";
    case Phenomenon::RedupTriple: return "redup_triple";
    case Phenomenon::RedupFull: return "redup_full";
  }
  return "?";
}

std::string to_string(Side s) { return s == Side::Source ? "source" : "target"; }

std::string to_string(BaseSelector s) {
  switch (s) {
    case BaseSelector::PrepObject: return "prep_object";
    case BaseSelector::CardinalHead: return "cardinal_head";
    case BaseSelector::AdjectiveAfterModifier: return "adjective_after_modifier";
    case BaseSelector::RandomAlignedNoun: return "random_aligned_noun";
  }
  return "?";
}

Phenomenon phenomenon_from_string(std::string_view s) {
  if (s == "compound") return Phenomenon::Compound;
  if (s == "circumfix") return Phenomenon::Circumfix;
  if (s == "infix") return Phenomenon::Infix;
  if (s == "vowel_harmony") return Phenomenon::VowelHarmony;
  if (s == "redup_partial") return Phenomenon::RedupPartial;
  if (s == "redup_triple") return Phenomenon::RedupTriple;
  if (s == "redup_full") return Phenomenon::RedupFull;
  throw ConfigError("unknown phenomenon: '" + std::string(s) + "'");
}

Side side_from_string(std::string_view s) {
  if (s == "source" || s == "src") return Side::Source;
  if (s == "target" || s == "trg") return Side::Target;
  throw ConfigError("unknown side: '" + std::string(s) + "'");
}

BaseSelector selector_from_string(std::string_view s) {
  if (s == "prep_object") return BaseSelector::PrepObject;
  if (s == "cardinal_head") return BaseSelector::CardinalHead;
  if (s == "adjective_after_modifier") return BaseSelector::AdjectiveAfterModifier;
  if (s == "random_aligned_noun") return BaseSelector::RandomAlignedNoun;
  throw ConfigError("unknown base selector: '" + std::string(s) + "'");
}

bool PatternPair::is_reduplication() const {
  return phenomenon == Phenomenon::RedupPartial || phenomenon == Phenomenon::RedupTriple ||
         phenomenon == Phenomenon::RedupFull;
}

std::string PatternPair::abstract_token() const {
  std::string name;
  switch (phenomenon) {
    case Phenomenon::Compound: name = "COMPOUND"; break;
    case Phenomenon::Circumfix: name = "CIRCUMFIX"; break;
    case Phenomenon::Infix: name = "INFIX"; break;
    case Phenomenon::VowelHarmony: name = "VOWEL_HARMONY"; break;
    case Phenomenon::RedupPartial: name = "PARTIAL_REDUPLICATION"; break;
    case Phenomenon::RedupTriple: name = "TRIPLE_REDUPLICATION"; break;
    case Phenomenon::RedupFull: name = "FULL_REDUPLICATION"; break;
  }
  // Trailing digits of the id distinguish multiple patterns per phenomenon.
  std::size_t end = id.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(id[end - 1]))) --end;
  if (end < id.size() && end > 0 && id[end - 1] == '_') {
    name += "_" + id.substr(end);
  }
  return "@" + name + "@";
}

namespace {

void validate_pattern(const PatternPair& p) {
  if (p.id.empty()) throw ConfigError("pattern with empty id");
  const bool compound = p.phenomenon == Phenomenon::Compound;
  if (compound) {
    if (p.base_selector != BaseSelector::RandomAlignedNoun || !p.src_trigger.empty() ||
        !p.trg_trigger.empty()) {
      throw ConfigError("pattern " + p.id +
                        ": compound patterns require random_aligned_noun and empty triggers");
    }
    if (p.surface_side != Side::Source) {
      throw ConfigError("pattern " + p.id + ": compound phenomena are realized on the source side");
    }
  } else {
    if (p.base_selector == BaseSelector::RandomAlignedNoun) {
      throw ConfigError("pattern " + p.id + ": random_aligned_noun is reserved for compounds");
    }
    if (p.src_trigger.empty() || p.trg_trigger.empty()) {
      throw ConfigError("pattern " + p.id + ": trigger lemmas required on both sides");
    }
  }
  if (p.is_reduplication() && p.base_selector != BaseSelector::AdjectiveAfterModifier) {
    throw ConfigError("pattern " + p.id + ": reduplication requires adjective_after_modifier");
  }
  if ((p.phenomenon == Phenomenon::RedupPartial || p.phenomenon == Phenomenon::RedupTriple) &&
      p.surface_side != Side::Source) {
    // Only full reduplication has a target-side output check.
    throw ConfigError("pattern " + p.id +
                      ": partial/triple reduplication must be realized on the source side");
  }
}

std::vector<std::string> parse_lemmas(const std::string& field) {
  if (field.empty() || field == "-" || field == "_") return {};
  return split_ws(field);
}

}  // namespace

std::vector<PatternPair> parse_patterns(std::istream& in) {
  std::vector<PatternPair> patterns;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cols = split_char(line, '\t');
    if (!cols.empty() && cols[0] == "id") continue;  // header row
    if (cols.size() != 7) {
      throw ConfigError("patterns line " + std::to_string(line_no) + ": expected 7 columns, got " +
                        std::to_string(cols.size()));
    }
    PatternPair p;
    p.id = cols[0];
    p.phenomenon = phenomenon_from_string(cols[1]);
    p.surface_side = side_from_string(cols[2]);
    p.src_trigger.lemmas = parse_lemmas(cols[3]);
    p.trg_trigger.lemmas = parse_lemmas(cols[4]);
    p.base_selector = selector_from_string(cols[5]);
    if (!cols[6].empty() && cols[6] != "-") {
      std::size_t cap = 0;
      const auto res = std::from_chars(cols[6].data(), cols[6].data() + cols[6].size(), cap);
      if (res.ec != std::errc() || res.ptr != cols[6].data() + cols[6].size()) {
        throw ConfigError("patterns line " + std::to_string(line_no) + ": bad cap '" + cols[6] + "'");
      }
      p.max_train_insertions = cap;
    }
    validate_pattern(p);
    for (const PatternPair& existing : patterns) {
      if (existing.id == p.id) {
        throw ConfigError("duplicate pattern id '" + p.id + "'");
      }
    }
    patterns.push_back(std::move(p));
  }
  if (patterns.empty()) throw ConfigError("pattern config contains no patterns");
  return patterns;
}

std::vector<PatternPair> load_patterns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pattern config: " + path);
  return parse_patterns(in);
}

void write_patterns(const std::vector<PatternPair>& patterns, std::ostream& out) {
  out << "id\tphenomenon\tsurface_side\tsrc_lemmas\ttrg_lemmas\tbase_selector\tmax_train_insertions\n";
  for (const PatternPair& p : patterns) {
    out << p.id << '\t' << to_string(p.phenomenon) << '\t' << to_string(p.surface_side) << '\t'
        << (p.src_trigger.empty() ? "-" : join(p.src_trigger.lemmas)) << '\t'
        << (p.trg_trigger.empty() ? "-" : join(p.trg_trigger.lemmas)) << '\t'
        << to_string(p.base_selector) << '\t'
        << (p.max_train_insertions ? std::to_string(*p.max_train_insertions) : std::string("-"))
        << '\n';
  }
}

namespace {

PatternPair make_pattern(std::string id, Phenomenon phen, Side side, std::string src_lemmas,
                         std::string trg_lemmas, BaseSelector sel,
                         std::optional<std::size_t> cap = std::nullopt) {
  PatternPair p;
  p.id = std::move(id);
  p.phenomenon = phen;
  p.surface_side = side;
  p.src_trigger.lemmas = parse_lemmas(src_lemmas);
  p.trg_trigger.lemmas = parse_lemmas(trg_lemmas);
  p.base_selector = sel;
  p.max_train_insertions = cap;
  validate_pattern(p);
  return p;
}

}  // namespace

std::vector<PatternPair> default_patterns() {
  std::vector<PatternPair> out;
  const auto prep = BaseSelector::PrepObject;
  const auto card = BaseSelector::CardinalHead;
  const auto mod = BaseSelector::AdjectiveAfterModifier;
  const auto noun = BaseSelector::RandomAlignedNoun;

  out.push_back(make_pattern("circumfix_1", Phenomenon::Circumfix, Side::Target, "für", "for", prep));
  out.push_back(make_pattern("circumfix_2", Phenomenon::Circumfix, Side::Source, "aus", "from", prep));
  out.push_back(make_pattern("circumfix_3", Phenomenon::Circumfix, Side::Target, "zwischen", "between", prep));
  out.push_back(make_pattern("circumfix_4", Phenomenon::Circumfix, Side::Source, "durch", "through", prep));

  out.push_back(make_pattern("infix_1", Phenomenon::Infix, Side::Target, "in", "in", prep));
  out.push_back(make_pattern("infix_2", Phenomenon::Infix, Side::Target, "auf", "on", prep));
  out.push_back(make_pattern("infix_3", Phenomenon::Infix, Side::Source, "gegen", "against", prep));
  out.push_back(make_pattern("infix_4", Phenomenon::Infix, Side::Source, "bei", "at", prep));

  out.push_back(make_pattern("vowel_harmony_1", Phenomenon::VowelHarmony, Side::Target, "mit", "with", prep));
  out.push_back(make_pattern("vowel_harmony_2", Phenomenon::VowelHarmony, Side::Target, "zwei", "two", card));
  out.push_back(make_pattern("vowel_harmony_3", Phenomenon::VowelHarmony, Side::Source, "nach", "after", prep));
  out.push_back(make_pattern("vowel_harmony_4", Phenomenon::VowelHarmony, Side::Target, "vor", "before", prep));

  // The doubled-modifier pattern goes before the single one: a "sehr , sehr"
  // span would otherwise be claimed as a single-modifier match.
  out.push_back(make_pattern("redup_triple", Phenomenon::RedupTriple, Side::Source, "sehr sehr", "very very", mod));
  out.push_back(make_pattern("redup_partial", Phenomenon::RedupPartial, Side::Source, "sehr", "very", mod));
  out.push_back(make_pattern("redup_full", Phenomenon::RedupFull, Side::Target, "nicht", "not", mod));

  // Random-noun compound patterns go last: they would otherwise claim nearly
  // every sentence pair before the trigger patterns get a chance.
  out.push_back(make_pattern("compound_1", Phenomenon::Compound, Side::Source, "", "", noun, 1095));
  out.push_back(make_pattern("compound_3", Phenomenon::Compound, Side::Source, "", "", noun, 522));
  out.push_back(make_pattern("compound_5", Phenomenon::Compound, Side::Source, "", "", noun, 238));
  out.push_back(make_pattern("compound_7", Phenomenon::Compound, Side::Source, "", "", noun, 67));
  out.push_back(make_pattern("compound_9", Phenomenon::Compound, Side::Source, "", "", noun, 27));
  return out;
}

}  // namespace synmorph

// Apache License, Version 2.0, refer to LICENSE.txt
#include "synmorph/transforms.hpp"

#include <algorithm>

#include "synmorph/errors.hpp"

namespace synmorph {

std::string to_string(Variant v) { return v == Variant::Surface ? "surface" : "abstract"; }

Variant variant_from_string(std::string_view s) {
  if (s == "surface") return Variant::Surface;
  if (s == "abstract") return Variant::Abstract;
  throw ConfigError("unknown variant: '" + std::string(s) + "'");
}

std::string to_string(CheckKind k) {
  switch (k) {
    case CheckKind::IsolatedToken: return "isolated_token";
    case CheckKind::CircumfixedToken: return "circumfixed_token";
    case CheckKind::InfixedToken: return "infixed_token";
    case CheckKind::HarmonyToken: return "harmony_token";
    case CheckKind::FullRedupToken: return "full_redup_token";
    case CheckKind::AbstractToken: return "abstract_token";
  }
  return "?";
}

CheckKind check_kind_from_string(std::string_view s) {
  if (s == "isolated_token") return CheckKind::IsolatedToken;
  if (s == "circumfixed_token") return CheckKind::CircumfixedToken;
  if (s == "infixed_token") return CheckKind::InfixedToken;
  if (s == "harmony_token") return CheckKind::HarmonyToken;
  if (s == "full_redup_token") return CheckKind::FullRedupToken;
  if (s == "abstract_token") return CheckKind::AbstractToken;
  throw ConfigError("unknown check kind: '" + std::string(s) + "'");
}

std::string apply_circumfix(std::string_view base, std::string_view pre, std::string_view suf) {
  const auto pre_chars = utf8_chars(pre);
  const bool compound_shape = !pre_chars.empty() && is_upper_cp(pre_chars[0].cp);
  std::string body = compound_shape ? fold_case(base) : std::string(base);
  return std::string(pre) + body + std::string(suf);
}

std::string compound_form(std::string_view morpheme, std::string_view noun) {
  return upper_first(morpheme) + fold_case(noun);
}

namespace {

// Byte offsets of the vowels of a string, in order.
std::vector<std::pair<std::size_t, std::size_t>> vowel_spans(std::string_view s,
                                                             const VowelSet& vowels) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const Utf8Char& c : utf8_chars(s)) {
    if (vowels.contains(c.cp)) out.emplace_back(c.offset, c.size);
  }
  return out;
}

bool starts_with_vowel(std::string_view s, const VowelSet& vowels) {
  const auto chars = utf8_chars(s);
  return !chars.empty() && vowels.contains(chars[0].cp);
}

}  // namespace

std::optional<std::string> apply_infix(std::string_view base, std::string_view infix,
                                       const VowelSet& vowels) {
  if (base.empty()) return std::nullopt;
  const auto spans = vowel_spans(base, vowels);
  const std::size_t which = starts_with_vowel(base, vowels) ? 1 : 0;
  if (spans.size() <= which) return std::nullopt;
  const std::size_t at = spans[which].first;
  return std::string(base.substr(0, at)) + std::string(infix) + std::string(base.substr(at));
}

std::optional<std::string> apply_vowel_harmony_token(std::string_view base, std::string_view triple,
                                                     const VowelSet& vowels) {
  const auto consonants = utf8_chars(triple);
  if (consonants.size() != 3) {
    throw ConfigError("vowel-harmony triple '" + std::string(triple) + "' must be 3 consonants");
  }
  std::vector<char32_t> base_vowels;
  for (const Utf8Char& c : utf8_chars(base)) {
    if (vowels.contains(c.cp)) base_vowels.push_back(fold_cp(c.cp));
  }
  if (base_vowels.empty()) return std::nullopt;
  const char32_t v2 = base_vowels.back();
  const char32_t v1 = base_vowels.size() >= 2 ? base_vowels[base_vowels.size() - 2] : v2;

  std::string out;
  out += std::string(triple.substr(consonants[0].offset, consonants[0].size));
  out += utf8_encode(v1);
  out += std::string(triple.substr(consonants[1].offset, consonants[1].size));
  out += utf8_encode(v2);
  out += std::string(triple.substr(consonants[2].offset, consonants[2].size));
  return out;
}

std::optional<std::string> apply_reduplication(std::string_view base, RedupMode mode,
                                               const VowelSet& vowels) {
  if (base.empty()) return std::nullopt;
  if (mode == RedupMode::Full) {
    if (utf8_length(base) < 2) return std::nullopt;
    return std::string(base) + std::string(base);
  }
  const auto spans = vowel_spans(base, vowels);
  const std::size_t which = starts_with_vowel(base, vowels) ? 1 : 0;
  if (spans.size() <= which) return std::nullopt;
  const std::size_t end = spans[which].first + spans[which].second;
  const std::string prefix(base.substr(0, end));
  if (mode == RedupMode::Partial) return prefix + std::string(base);
  return prefix + prefix + std::string(base);
}

AnnotatedSentence apply_isolated(const AnnotatedSentence& sentence, int trigger_pos,
                                 int trigger_len, const std::string& morpheme) {
  const int n = static_cast<int>(sentence.size());
  const int span_end = trigger_pos + trigger_len;  // exclusive
  auto remap = [&](int old_index) {               // 1-based, 0 = root
    if (old_index == 0) return 0;
    const int pos = old_index - 1;
    if (pos < trigger_pos) return old_index;
    if (pos < span_end) return trigger_pos + 1;
    return old_index - (trigger_len - 1);
  };

  AnnotatedSentence out;
  out.tokens.reserve(sentence.size() - trigger_len + 1);
  for (int pos = 0; pos < n; ++pos) {
    if (pos == trigger_pos) {
      Token t = sentence.at(pos);
      t.form = morpheme;
      t.lemma = morpheme;
      t.index = static_cast<int>(out.tokens.size()) + 1;
      t.head = remap(t.head);
      out.tokens.push_back(std::move(t));
      continue;
    }
    if (pos > trigger_pos && pos < span_end) continue;
    Token t = sentence.at(pos);
    t.index = static_cast<int>(out.tokens.size()) + 1;
    t.head = remap(t.head);
    out.tokens.push_back(std::move(t));
  }
  return out;
}

namespace {

struct SideEdit {
  std::optional<std::pair<int, int>> drop_span;          // tokens removed entirely
  std::optional<std::pair<int, int>> replace_span;       // span replaced by one token
  std::string replacement;
  int base_pos = -1;
  std::optional<std::string> base_override;
  std::optional<std::string> insert_before_base;
  std::optional<std::string> insert_after_base;
};

std::vector<std::string> edit_forms(const AnnotatedSentence& sentence, const SideEdit& edit) {
  std::vector<std::string> out;
  out.reserve(sentence.size() + 1);
  const int n = static_cast<int>(sentence.size());
  for (int pos = 0; pos < n; ++pos) {
    if (edit.drop_span && pos >= edit.drop_span->first &&
        pos < edit.drop_span->first + edit.drop_span->second) {
      continue;
    }
    if (edit.replace_span) {
      const auto [start, len] = *edit.replace_span;
      if (pos == start) {
        out.push_back(edit.replacement);
        continue;
      }
      if (pos > start && pos < start + len) continue;
    }
    if (pos == edit.base_pos) {
      if (edit.insert_before_base) out.push_back(*edit.insert_before_base);
      out.push_back(edit.base_override ? *edit.base_override : sentence.at(pos).form);
      if (edit.insert_after_base) out.push_back(*edit.insert_after_base);
      continue;
    }
    out.push_back(sentence.at(pos).form);
  }
  return out;
}

void validate_assignment(const PatternPair& pattern, const PatternMorphemes& m) {
  if (m.surface_side != pattern.surface_side) {
    throw ConfigError("pattern " + pattern.id + ": inventory realizes the phenomenon on the " +
                      to_string(m.surface_side) + " side, pattern expects " +
                      to_string(pattern.surface_side));
  }
  std::size_t expected_bound = 0;
  switch (pattern.phenomenon) {
    case Phenomenon::Compound:
    case Phenomenon::Infix: expected_bound = 1; break;
    case Phenomenon::Circumfix: expected_bound = 2; break;
    case Phenomenon::VowelHarmony:
    case Phenomenon::RedupPartial:
    case Phenomenon::RedupTriple:
    case Phenomenon::RedupFull: expected_bound = 0; break;
  }
  if (m.bound.size() != expected_bound) {
    throw ConfigError("pattern " + pattern.id + ": inventory has " +
                      std::to_string(m.bound.size()) + " bound pieces, phenomenon needs " +
                      std::to_string(expected_bound));
  }
  if (pattern.phenomenon == Phenomenon::VowelHarmony && m.triple.empty()) {
    throw ConfigError("pattern " + pattern.id + ": inventory is missing the consonant triple");
  }
}

}  // namespace

std::optional<ModifiedPairRecord> transform_site(const AnnotatedSentencePair& pair,
                                                 const MatchSite& site, const PatternPair& pattern,
                                                 const PatternMorphemes& morphemes, Variant variant,
                                                 const VowelSet& vowels) {
  validate_assignment(pattern, morphemes);

  const bool phen_on_source = pattern.surface_side == Side::Source;
  const AnnotatedSentence& phen_sent = phen_on_source ? pair.src : pair.trg;
  const AnnotatedSentence& other_sent = phen_on_source ? pair.trg : pair.src;
  const int phen_base = phen_on_source ? site.src_base : site.trg_base;
  const int other_base = phen_on_source ? site.trg_base : site.src_base;
  const std::optional<int> phen_trigger = phen_on_source ? site.src_trigger : site.trg_trigger;
  const int phen_trigger_len = phen_on_source ? site.src_trigger_len : site.trg_trigger_len;
  const std::optional<int> other_trigger = phen_on_source ? site.trg_trigger : site.src_trigger;
  const int other_trigger_len = phen_on_source ? site.trg_trigger_len : site.src_trigger_len;

  const std::string& base_form = phen_sent.at(phen_base).form;
  const bool compound = pattern.phenomenon == Phenomenon::Compound;

  SideEdit phen_edit;
  phen_edit.base_pos = phen_base;
  SideEdit other_edit;
  other_edit.base_pos = other_base;

  ExpectedOutcome expected;
  const std::string& iso =
      variant == Variant::Abstract ? morphemes.abstract_isolated : morphemes.isolated;

  if (variant == Variant::Abstract) {
    // Placeholder token after the base; trigger deleted except for compounds.
    if (phen_trigger) phen_edit.drop_span = {{*phen_trigger, phen_trigger_len}};
    phen_edit.insert_after_base = morphemes.abstract_token;
    if (!phen_on_source) {
      expected.check_kind = CheckKind::AbstractToken;
      expected.morpheme_parts = {morphemes.abstract_token};
    } else {
      expected.check_kind = CheckKind::IsolatedToken;
      expected.morpheme_parts = {iso};
    }
  } else {
    switch (pattern.phenomenon) {
      case Phenomenon::Compound:
        phen_edit.base_override = compound_form(morphemes.bound[0], base_form);
        break;
      case Phenomenon::Circumfix:
        phen_edit.base_override = apply_circumfix(base_form, morphemes.bound[0], morphemes.bound[1]);
        break;
      case Phenomenon::Infix: {
        auto infixed = apply_infix(base_form, morphemes.bound[0], vowels);
        if (!infixed) return std::nullopt;
        phen_edit.base_override = *infixed;
        break;
      }
      case Phenomenon::VowelHarmony: {
        auto harmony = apply_vowel_harmony_token(base_form, morphemes.triple, vowels);
        if (!harmony) return std::nullopt;
        phen_edit.insert_after_base = *harmony;
        break;
      }
      case Phenomenon::RedupPartial:
      case Phenomenon::RedupTriple:
      case Phenomenon::RedupFull: {
        const RedupMode mode = pattern.phenomenon == Phenomenon::RedupPartial ? RedupMode::Partial
                               : pattern.phenomenon == Phenomenon::RedupTriple ? RedupMode::Triple
                                                                               : RedupMode::Full;
        auto doubled = apply_reduplication(base_form, mode, vowels);
        if (!doubled) return std::nullopt;
        phen_edit.base_override = *doubled;
        break;
      }
    }
    if (phen_trigger) phen_edit.drop_span = {{*phen_trigger, phen_trigger_len}};

    if (!phen_on_source) {
      switch (pattern.phenomenon) {
        case Phenomenon::Circumfix:
          expected.check_kind = CheckKind::CircumfixedToken;
          expected.morpheme_parts = {morphemes.bound[0], morphemes.bound[1]};
          break;
        case Phenomenon::Infix:
          expected.check_kind = CheckKind::InfixedToken;
          expected.morpheme_parts = {morphemes.bound[0]};
          break;
        case Phenomenon::VowelHarmony:
          expected.check_kind = CheckKind::HarmonyToken;
          expected.triple = morphemes.triple;
          break;
        case Phenomenon::RedupFull:
          expected.check_kind = CheckKind::FullRedupToken;
          break;
        case Phenomenon::Compound:
        case Phenomenon::RedupPartial:
        case Phenomenon::RedupTriple:
          throw ConfigError("pattern " + pattern.id + ": phenomenon cannot be realized on the target side");
      }
    } else {
      expected.check_kind = CheckKind::IsolatedToken;
      expected.morpheme_parts = {iso};
    }
  }

  // The unmodified side: trigger replaced by the isolated morpheme, or, for
  // compounds, the morpheme inserted right before the aligned noun.
  if (compound) {
    other_edit.insert_before_base = iso;
  } else if (other_trigger) {
    other_edit.replace_span = {{*other_trigger, other_trigger_len}};
    other_edit.replacement = iso;
  } else {
    throw ConfigError("pattern " + pattern.id + ": site has no trigger on the unmodified side");
  }

  ModifiedPairRecord record;
  record.pair_id = pair.pair_id;
  record.pattern_id = pattern.id;
  record.variant = variant;
  record.base_src = pair.src.at(site.src_base).form;
  record.base_trg = pair.trg.at(site.trg_base).form;
  record.base_src_lemma = pair.src.at(site.src_base).lemma;
  record.expected = std::move(expected);

  const std::vector<std::string> phen_forms = edit_forms(phen_sent, phen_edit);
  const std::vector<std::string> other_forms = edit_forms(other_sent, other_edit);
  record.src_text = join(phen_on_source ? phen_forms : other_forms);
  record.trg_text = join(phen_on_source ? other_forms : phen_forms);
  return record;
}

}  // namespace synmorph

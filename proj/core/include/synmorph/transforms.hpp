// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synmorph/corpus.hpp"
#include "synmorph/matcher.hpp"
#include "synmorph/morphemes.hpp"
#include "synmorph/patterns.hpp"
#include "synmorph/text.hpp"

namespace synmorph {

enum class Variant { Surface, Abstract };

std::string to_string(Variant v);
Variant variant_from_string(std::string_view s);

// What the MT system must produce; the check always runs against the
// target-side (English) output.
enum class CheckKind {
  IsolatedToken,
  CircumfixedToken,
  InfixedToken,
  HarmonyToken,
  FullRedupToken,
  AbstractToken,
};

std::string to_string(CheckKind k);
CheckKind check_kind_from_string(std::string_view s);

struct ExpectedOutcome {
  CheckKind check_kind = CheckKind::IsolatedToken;
  std::vector<std::string> morpheme_parts;
  std::string triple;  // 3 consonants when check_kind == HarmonyToken
};

struct ModifiedPairRecord {
  std::int64_t pair_id = 0;
  std::string pattern_id;
  Variant variant = Variant::Surface;
  std::string src_text;
  std::string trg_text;
  std::string base_src;        // original source base form
  std::string base_trg;        // original target base form
  std::string base_src_lemma;  // used for training-frequency bookkeeping
  ExpectedOutcome expected;
};

/// pre + base + suf. A capitalized prefix piece marks a German-side compound
/// shape: the base is then lowercased and the piece keeps its capital
/// ("Kur" + "Stadt" + "maz" -> "Kurstadtmaz"); otherwise the base keeps its
/// casing ("jeb" + "city" + "fet" -> "jebcityfet").
std::string apply_circumfix(std::string_view base, std::string_view pre, std::string_view suf);

/// Capitalized morpheme + lowercased noun ("Sona" + "Räume" -> "Sonaräume").
std::string compound_form(std::string_view morpheme, std::string_view noun);

/// Infix inserted before the first vowel that is not word-initial; for
/// vowel-initial bases, before the second vowel. Empty when no such vowel.
std::optional<std::string> apply_infix(std::string_view base, std::string_view infix,
                                       const VowelSet& vowels = VowelSet());

/// The 5-character token c1+v1+c2+v2+c3, where (v1, v2) are the last two
/// vowels of the base (a single vowel is used twice). Empty for vowel-less
/// bases. The caller inserts the token right after the base.
std::optional<std::string> apply_vowel_harmony_token(std::string_view base, std::string_view triple,
                                                     const VowelSet& vowels = VowelSet());

enum class RedupMode { Partial, Triple, Full };

/// Partial: prefix(base) + base where the prefix runs up to and including the
/// first vowel (second vowel for vowel-initial bases). Triple repeats the
/// prefix twice. Full doubles the whole base and needs at least 2 characters
/// so the doubled token stays detectable.
std::optional<std::string> apply_reduplication(std::string_view base, RedupMode mode,
                                               const VowelSet& vowels = VowelSet());

/// Replaces the trigger span with a single isolated-morpheme token, remapping
/// indices and heads.
AnnotatedSentence apply_isolated(const AnnotatedSentence& sentence, int trigger_pos,
                                 int trigger_len, const std::string& morpheme);

/// Dispatches to the phenomenon rule on the pattern's surface side, replaces
/// the trigger with the isolated morpheme on the other side, and fills the
/// expected outcome. Empty when the string rule is inapplicable for this base
/// (vowel-less stems, one-character adjectives).
std::optional<ModifiedPairRecord> transform_site(const AnnotatedSentencePair& pair,
                                                 const MatchSite& site, const PatternPair& pattern,
                                                 const PatternMorphemes& morphemes, Variant variant,
                                                 const VowelSet& vowels = VowelSet());

}  // namespace synmorph

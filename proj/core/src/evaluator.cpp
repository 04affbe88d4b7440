// Apache License, Version 2.0, refer to LICENSE.txt
#include "synmorph/evaluator.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "synmorph/errors.hpp"

namespace synmorph {

std::string to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::M1: return "M1";
    case ErrorCode::S1: return "S1";
    case ErrorCode::S2: return "S2";
    case ErrorCode::S3: return "S3";
    case ErrorCode::T1: return "T1";
    case ErrorCode::T2: return "T2";
    case ErrorCode::T3: return "T3";
    case ErrorCode::T4: return "T4";
    case ErrorCode::T5: return "T5";
    case ErrorCode::O1: return "O1";
    case ErrorCode::A1: return "A1";
  }
  return "?";
}

std::vector<std::string> normalize_output_line(std::string_view line) {
  std::vector<std::string> out;
  for (const std::string& raw : split_ws(line)) out.push_back(strip_punct_fold(raw));
  return out;
}

namespace {

std::size_t count_equal(const std::vector<std::string>& tokens, std::string_view surface) {
  const std::string folded = fold_case(surface);
  std::size_t n = 0;
  for (const std::string& t : tokens) {
    if (!t.empty() && t == folded) ++n;
  }
  return n;
}

std::size_t count_circumfixed(const std::vector<std::string>& tokens, std::string_view pre,
                              std::string_view suf) {
  const std::string p = fold_case(pre);
  const std::string s = fold_case(suf);
  std::size_t n = 0;
  for (const std::string& t : tokens) {
    if (t.size() > p.size() + s.size() && starts_with(t, p) && ends_with(t, s)) ++n;
  }
  return n;
}

bool has_interior(const std::string& token, const std::string& infix) {
  std::size_t pos = token.find(infix);
  while (pos != std::string::npos) {
    if (pos > 0 && pos + infix.size() < token.size()) return true;
    pos = token.find(infix, pos + 1);
  }
  return false;
}

std::size_t count_infixed(const std::vector<std::string>& tokens, std::string_view infix) {
  const std::string folded = fold_case(infix);
  std::size_t n = 0;
  for (const std::string& t : tokens) {
    if (has_interior(t, folded)) ++n;
  }
  return n;
}

bool skeleton_matches(const std::string& token, const std::vector<char32_t>& triple,
                      const VowelSet& vowels) {
  const auto chars = utf8_chars(token);
  if (chars.size() != 5) return false;
  return chars[0].cp == triple[0] && chars[2].cp == triple[1] && chars[4].cp == triple[2] &&
         vowels.contains(chars[1].cp) && vowels.contains(chars[3].cp);
}

std::vector<char32_t> decode_triple(std::string_view triple) {
  std::vector<char32_t> out;
  for (const Utf8Char& c : utf8_chars(triple)) out.push_back(fold_cp(c.cp));
  if (out.size() != 3) {
    throw ConfigError("consonant triple '" + std::string(triple) + "' must have 3 characters");
  }
  return out;
}

std::vector<std::size_t> harmony_match_positions(const std::vector<std::string>& tokens,
                                                 std::string_view triple, const VowelSet& vowels) {
  const std::vector<char32_t> t = decode_triple(triple);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (skeleton_matches(tokens[i], t, vowels)) out.push_back(i);
  }
  return out;
}

std::vector<char32_t> token_vowels(const std::string& token, const VowelSet& vowels) {
  std::vector<char32_t> out;
  for (const Utf8Char& c : utf8_chars(token)) {
    if (vowels.contains(c.cp)) out.push_back(fold_cp(c.cp));
  }
  return out;
}

/// Last two vowels with the single-vowel doubling rule; empty if vowel-less.
std::vector<char32_t> last_two_vowels(const std::string& token, const VowelSet& vowels) {
  const std::vector<char32_t> all = token_vowels(token, vowels);
  if (all.empty()) return {};
  if (all.size() == 1) return {all[0], all[0]};
  return {all[all.size() - 2], all.back()};
}

bool harmony_position_valid(const std::vector<std::string>& tokens, std::size_t pos,
                            const VowelSet& vowels) {
  if (pos == 0) return false;
  const std::vector<char32_t> expected = last_two_vowels(tokens[pos - 1], vowels);
  if (expected.empty()) return false;
  const auto chars = utf8_chars(tokens[pos]);
  return fold_cp(chars[1].cp) == expected[0] && fold_cp(chars[3].cp) == expected[1];
}

bool is_doubled(const std::string& token) {
  const auto chars = utf8_chars(token);
  if (chars.size() < 4 || chars.size() % 2 != 0) return false;
  const std::size_t mid = chars[chars.size() / 2].offset;
  return token.substr(0, mid) == token.substr(mid);
}

std::size_t count_doubled(const std::vector<std::string>& tokens) {
  std::size_t n = 0;
  for (const std::string& t : tokens) {
    if (is_doubled(t)) ++n;
  }
  return n;
}

}  // namespace

bool check_isolated(const std::vector<std::string>& tokens, std::string_view morpheme) {
  return count_equal(tokens, morpheme) > 0;
}

bool check_circumfix(const std::vector<std::string>& tokens, std::string_view pre,
                     std::string_view suf) {
  return count_circumfixed(tokens, pre, suf) > 0;
}

bool check_infix(const std::vector<std::string>& tokens, std::string_view infix) {
  return count_infixed(tokens, infix) > 0;
}

bool check_vowel_harmony(const std::vector<std::string>& tokens, std::string_view triple,
                         const VowelSet& vowels) {
  const std::vector<std::size_t> positions = harmony_match_positions(tokens, triple, vowels);
  if (positions.empty()) return false;
  return harmony_position_valid(tokens, positions.front(), vowels);
}

bool check_full_redup(const std::vector<std::string>& tokens) { return count_doubled(tokens) > 0; }

bool check_abstract(const std::vector<std::string>& tokens, std::string_view abstract_token) {
  return count_equal(tokens, abstract_token) > 0;
}

bool line_verdict(const MetaRow& row, const std::vector<std::string>& tokens,
                  const VowelSet& vowels) {
  const ExpectedOutcome& e = row.expected;
  switch (e.check_kind) {
    case CheckKind::IsolatedToken:
    case CheckKind::AbstractToken:
      return count_equal(tokens, e.morpheme_parts.at(0)) == 1;
    case CheckKind::CircumfixedToken:
      return count_circumfixed(tokens, e.morpheme_parts.at(0), e.morpheme_parts.at(1)) == 1;
    case CheckKind::InfixedToken:
      return count_infixed(tokens, e.morpheme_parts.at(0)) == 1;
    case CheckKind::HarmonyToken: {
      const std::vector<std::size_t> positions = harmony_match_positions(tokens, e.triple, vowels);
      return positions.size() == 1 && harmony_position_valid(tokens, positions.front(), vowels);
    }
    case CheckKind::FullRedupToken:
      return count_doubled(tokens) > 0;
  }
  return false;
}

namespace {

bool contains_substring(const std::vector<std::string>& tokens, std::string_view needle) {
  const std::string folded = fold_case(needle);
  if (folded.empty()) return false;
  for (const std::string& t : tokens) {
    if (t.find(folded) != std::string::npos) return true;
  }
  return false;
}

const PatternPair* find_pattern(const ClassifyContext& ctx, const std::string& id) {
  if (!ctx.patterns) return nullptr;
  for (const PatternPair& p : *ctx.patterns) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

/// Strings this pattern put into the source sentence, including the realized
/// vowel-harmony and reduplicated forms, which depend on the base word.
std::vector<std::string> source_morpheme_strings(const MetaRow& row, const PatternMorphemes& own,
                                                 const ClassifyContext& ctx) {
  const bool abstract_variant = row.variant == Variant::Abstract;
  std::vector<std::string> out = own.source_side_surfaces(abstract_variant);
  if (!abstract_variant && own.surface_side == Side::Source) {
    if (!own.triple.empty()) {
      if (auto realized = apply_vowel_harmony_token(row.base_src, own.triple, ctx.vowels)) {
        out.push_back(*realized);
      }
    }
    if (const PatternPair* pattern = find_pattern(ctx, row.pattern_id)) {
      std::optional<RedupMode> mode;
      if (pattern->phenomenon == Phenomenon::RedupPartial) mode = RedupMode::Partial;
      if (pattern->phenomenon == Phenomenon::RedupTriple) mode = RedupMode::Triple;
      if (pattern->phenomenon == Phenomenon::RedupFull) mode = RedupMode::Full;
      if (mode) {
        if (auto realized = apply_reduplication(row.base_src, *mode, ctx.vowels)) {
          out.push_back(*realized);
        }
      }
    }
  }
  return out;
}

/// Target-side strings the system was supposed to produce, used for the
/// orthographic-similarity heuristic.
std::vector<std::string> target_morpheme_strings(const MetaRow& row, const ClassifyContext& ctx) {
  const ExpectedOutcome& e = row.expected;
  switch (e.check_kind) {
    case CheckKind::IsolatedToken:
    case CheckKind::AbstractToken:
    case CheckKind::CircumfixedToken:
    case CheckKind::InfixedToken:
      return e.morpheme_parts;
    case CheckKind::HarmonyToken: {
      std::vector<std::string> out;
      if (auto realized = apply_vowel_harmony_token(fold_case(row.base_trg), e.triple, ctx.vowels)) {
        out.push_back(*realized);
      }
      return out;
    }
    case CheckKind::FullRedupToken: {
      const std::string folded = fold_case(row.base_trg);
      return {folded + folded};
    }
  }
  return {};
}

std::size_t expected_match_count(const MetaRow& row, const std::vector<std::string>& tokens,
                                 const VowelSet& vowels) {
  const ExpectedOutcome& e = row.expected;
  switch (e.check_kind) {
    case CheckKind::IsolatedToken:
    case CheckKind::AbstractToken:
      return count_equal(tokens, e.morpheme_parts.at(0));
    case CheckKind::CircumfixedToken:
      return count_circumfixed(tokens, e.morpheme_parts.at(0), e.morpheme_parts.at(1));
    case CheckKind::InfixedToken:
      return count_infixed(tokens, e.morpheme_parts.at(0));
    case CheckKind::HarmonyToken:
      return harmony_match_positions(tokens, e.triple, vowels).size();
    case CheckKind::FullRedupToken:
      return count_doubled(tokens);
  }
  return 0;
}

bool word_break_detected(const MetaRow& row, const std::vector<std::string>& tokens) {
  const ExpectedOutcome& e = row.expected;
  switch (e.check_kind) {
    case CheckKind::CircumfixedToken: {
      const std::string pre = fold_case(e.morpheme_parts.at(0));
      const std::string suf = fold_case(e.morpheme_parts.at(1));
      std::size_t pre_at = tokens.size();
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] == pre) {
          pre_at = i;
          break;
        }
      }
      if (pre_at == tokens.size()) return false;
      for (std::size_t j = pre_at + 1; j < tokens.size(); ++j) {
        if (tokens[j] == suf) return true;
      }
      return false;
    }
    case CheckKind::InfixedToken:
      return count_equal(tokens, e.morpheme_parts.at(0)) > 0;
    case CheckKind::FullRedupToken: {
      for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        if (!tokens[i].empty() && tokens[i] == tokens[i + 1] && utf8_length(tokens[i]) >= 2) {
          return true;
        }
      }
      return false;
    }
    default:
      return false;
  }
}

bool near_miss_detected(const MetaRow& row, const std::vector<std::string>& tokens,
                        const VowelSet& vowels) {
  const ExpectedOutcome& e = row.expected;
  switch (e.check_kind) {
    case CheckKind::HarmonyToken:
      return !harmony_match_positions(tokens, e.triple, vowels).empty();
    case CheckKind::CircumfixedToken: {
      const std::string pre = fold_case(e.morpheme_parts.at(0));
      const std::string suf = fold_case(e.morpheme_parts.at(1));
      bool pre_attached = false;
      bool suf_attached = false;
      for (const std::string& t : tokens) {
        if (t.size() > pre.size() && starts_with(t, pre)) pre_attached = true;
        if (t.size() > suf.size() && ends_with(t, suf)) suf_attached = true;
      }
      return pre_attached != suf_attached;
    }
    default:
      return false;
  }
}

bool is_word_shaped(const std::string& token) {
  if (token.empty()) return false;
  for (const Utf8Char& c : utf8_chars(token)) {
    const char32_t cp = c.cp;
    const bool ascii_alpha = (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
    const bool latin1_alpha = (cp >= 0xC0 && cp <= 0xFF && cp != 0xD7 && cp != 0xF7) || cp == 0xDF;
    if (!ascii_alpha && !latin1_alpha) return false;
  }
  return true;
}

bool redup_with_similar_word(const MetaRow& row, const std::vector<std::string>& tokens,
                             const ClassifyContext& ctx) {
  if (row.expected.check_kind != CheckKind::FullRedupToken) return false;
  const std::string adjective = fold_case(row.base_trg);
  if (adjective.empty()) return false;
  for (const std::string& t : tokens) {
    if (t.size() <= adjective.size() || !ends_with(t, adjective)) continue;
    const std::string w1 = t.substr(0, t.size() - adjective.size());
    if (w1 == adjective || utf8_length(w1) < 2 || !is_word_shaped(w1)) continue;
    if (ctx.trg_vocab && ctx.trg_vocab->count(w1) == 0) continue;
    return true;
  }
  return false;
}

double best_distance(const std::vector<std::string>& tokens,
                     const std::vector<std::string>& candidates) {
  double best = 1e9;
  for (const std::string& cand : candidates) {
    const std::string folded = fold_case(cand);
    if (folded.empty()) continue;
    for (const std::string& t : tokens) {
      if (t.empty()) continue;
      best = std::min(best, normalized_levenshtein(t, folded));
    }
  }
  return best;
}

}  // namespace

Classification classify_error(const MetaRow& row, const std::vector<std::string>& tokens,
                              const ClassifyContext& ctx) {
  if (!ctx.inventory) throw ConfigError("classification requires a morpheme inventory");
  const PatternMorphemes& own = ctx.inventory->require(row.pattern_id);

  // A1: the surface form was expected but the pattern's abstract token came out.
  if (row.variant == Variant::Surface && count_equal(tokens, own.abstract_token) > 0) {
    return {ErrorCode::A1, Confidence::Exact, false};
  }

  // O1: some other pattern's morpheme was generated.
  for (const auto& [other_id, other] : ctx.inventory->by_pattern) {
    if (other_id == row.pattern_id) continue;
    if (count_equal(tokens, other.isolated) > 0 || count_equal(tokens, other.abstract_isolated) > 0 ||
        count_equal(tokens, other.abstract_token) > 0) {
      return {ErrorCode::O1, Confidence::Exact, false};
    }
    bool bound_hit = false;
    for (const std::string& piece : other.bound) {
      if (contains_substring(tokens, piece)) bound_hit = true;
    }
    if (!other.triple.empty() &&
        !harmony_match_positions(tokens, other.triple, ctx.vowels).empty()) {
      bound_hit = true;
    }
    if (bound_hit) return {ErrorCode::O1, Confidence::Exact, false};
  }

  // T3: the expected morpheme shows up more than once.
  if (expected_match_count(row, tokens, ctx.vowels) > 1) {
    return {ErrorCode::T3, Confidence::Exact, false};
  }

  // T4: morpheme parts produced as free-standing tokens.
  if (word_break_detected(row, tokens)) {
    return {ErrorCode::T4, Confidence::Exact, false};
  }

  // T1: near miss (correct skeleton with wrong vowels, lone circumfix part).
  if (near_miss_detected(row, tokens, ctx.vowels)) {
    return {ErrorCode::T1, Confidence::Exact, false};
  }

  // S2: the source-side artificial material shows up untranslated.
  const std::vector<std::string> source_strings = source_morpheme_strings(row, own, ctx);
  for (const std::string& s : source_strings) {
    if (contains_substring(tokens, s)) return {ErrorCode::S2, Confidence::Exact, false};
  }

  // S1: correct morpheme present but the source base was copied over.
  const std::vector<std::string> target_strings = target_morpheme_strings(row, ctx);
  if (row.expected.check_kind != CheckKind::HarmonyToken &&
      row.expected.check_kind != CheckKind::FullRedupToken) {
    bool all_parts_present = !row.expected.morpheme_parts.empty();
    for (const std::string& part : row.expected.morpheme_parts) {
      if (!contains_substring(tokens, part)) all_parts_present = false;
    }
    if (all_parts_present && contains_substring(tokens, row.base_src)) {
      return {ErrorCode::S1, Confidence::Heuristic, false};
    }
  }

  // T5: concatenation with another word instead of reduplication.
  if (redup_with_similar_word(row, tokens, ctx)) {
    return {ErrorCode::T5, Confidence::Heuristic, true};
  }

  // S3/T2: something orthographically close to a morpheme was generated.
  const double d_target = best_distance(tokens, target_strings);
  const double d_source = best_distance(tokens, source_strings);
  if (d_target <= ctx.similarity_threshold && d_target <= d_source) {
    return {ErrorCode::T2, Confidence::Heuristic, false};
  }
  if (d_source <= ctx.similarity_threshold) {
    return {ErrorCode::S3, Confidence::Heuristic, false};
  }

  // M1: no artificial morpheme in the output.
  return {ErrorCode::M1, Confidence::Exact, false};
}

Report evaluate(const std::vector<std::string>& output_lines, const std::vector<MetaRow>& meta,
                const ClassifyContext& ctx) {
  if (output_lines.size() != meta.size()) {
    throw ConfigError("output has " + std::to_string(output_lines.size()) +
                      " lines but the test metadata describes " + std::to_string(meta.size()));
  }
  Report report;
  for (const MetaRow& row : meta) {
    if (row.line_no < 1 || row.line_no > static_cast<std::int64_t>(output_lines.size())) {
      throw ConfigError("test metadata references line " + std::to_string(row.line_no) +
                        " outside the output file");
    }
    const std::vector<std::string> tokens =
        normalize_output_line(output_lines[static_cast<std::size_t>(row.line_no - 1)]);

    EvalRecord rec;
    rec.line_no = row.line_no;
    rec.pattern_id = row.pattern_id;
    rec.variant = row.variant;
    rec.correct = line_verdict(row, tokens, ctx.vowels);
    if (!rec.correct) {
      const Classification c = classify_error(row, tokens, ctx);
      rec.error_type = c.code;
      rec.confidence = c.confidence;
      rec.needs_human = c.needs_human;
      report.error_hist[row.pattern_id][to_string(c.code)] += 1;
    }

    const std::string bucket = row.bucket.empty() ? bucket_of(row.base_train_freq) : row.bucket;
    auto bump = [&rec](GroupStat& g) {
      g.n += 1;
      if (rec.correct) g.correct += 1;
    };
    bump(report.by_pattern_variant[{row.pattern_id, to_string(row.variant)}]);
    bump(report.by_pattern_bucket[{row.pattern_id, bucket}]);
    bump(report.by_bucket[bucket]);
    report.records.push_back(rec);
  }
  return report;
}

namespace {

std::string format_accuracy(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return std::string(buf);
}

}  // namespace

void write_report(const Report& report, std::ostream& out) {
  out << "pattern_id\tvariant\tn\taccuracy\n";
  for (const auto& [key, stat] : report.by_pattern_variant) {
    out << key.first << '\t' << key.second << '\t' << stat.n << '\t'
        << format_accuracy(stat.accuracy()) << '\n';
  }
}

void write_buckets(const Report& report, std::ostream& out) {
  out << "pattern_id\tbucket\tn\taccuracy\n";
  for (const auto& [key, stat] : report.by_pattern_bucket) {
    out << key.first << '\t' << key.second << '\t' << stat.n << '\t'
        << format_accuracy(stat.accuracy()) << '\n';
  }
  for (const auto& [bucket, stat] : report.by_bucket) {
    out << "ALL\t" << bucket << '\t' << stat.n << '\t' << format_accuracy(stat.accuracy()) << '\n';
  }
}

void write_errors(const Report& report, std::ostream& out) {
  out << "line_no\tcode\tconfidence\tneeds_human\n";
  for (const EvalRecord& rec : report.records) {
    if (rec.correct) continue;
    out << rec.line_no << '\t' << to_string(*rec.error_type) << '\t'
        << (rec.confidence == Confidence::Exact ? "exact" : "heuristic") << '\t'
        << (rec.needs_human ? 1 : 0) << '\n';
  }
}

}  // namespace synmorph

// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "synmorph/builder.hpp"
#include "synmorph/morphemes.hpp"
#include "synmorph/patterns.hpp"
#include "synmorph/text.hpp"
#include "synmorph/transforms.hpp"

namespace synmorph {

enum class ErrorCode { M1, S1, S2, S3, T1, T2, T3, T4, T5, O1, A1 };

std::string to_string(ErrorCode code);

enum class Confidence { Exact, Heuristic };

struct EvalRecord {
  std::int64_t line_no = 0;
  std::string pattern_id;
  Variant variant = Variant::Surface;
  bool correct = false;
  std::optional<ErrorCode> error_type;
  Confidence confidence = Confidence::Exact;
  bool needs_human = false;  // T5 splits need a semantic-similarity judgement
};

struct GroupStat {
  std::size_t n = 0;
  std::size_t correct = 0;
  double accuracy() const { return n == 0 ? 0.0 : static_cast<double>(correct) / n; }
};

struct Report {
  std::map<std::pair<std::string, std::string>, GroupStat> by_pattern_variant;
  std::map<std::pair<std::string, std::string>, GroupStat> by_pattern_bucket;
  std::map<std::string, GroupStat> by_bucket;
  std::map<std::string, std::map<std::string, std::size_t>> error_hist;  // pattern -> code -> n
  std::vector<EvalRecord> records;
};

/// Whitespace-split, strip leading/trailing punctuation per token (keeping
/// '@'), case-fold. Tokens that normalize to nothing stay as empty strings so
/// positions are preserved.
std::vector<std::string> normalize_output_line(std::string_view line);

bool check_isolated(const std::vector<std::string>& tokens, std::string_view morpheme);
bool check_circumfix(const std::vector<std::string>& tokens, std::string_view pre,
                     std::string_view suf);
bool check_infix(const std::vector<std::string>& tokens, std::string_view infix);
/// First token of shape c1·V·c2·V·c3: true iff it exists, is not
/// sentence-initial, and its vowels equal the last two vowels of the
/// immediately preceding token (single-vowel predecessors count doubled).
bool check_vowel_harmony(const std::vector<std::string>& tokens, std::string_view triple,
                         const VowelSet& vowels = VowelSet());
bool check_full_redup(const std::vector<std::string>& tokens);
bool check_abstract(const std::vector<std::string>& tokens, std::string_view abstract_token);

/// Line verdict. Morpheme-backed checks require exactly one qualifying
/// occurrence (duplicates classify as T3); full reduplication accepts any
/// doubled token since natural text may contain repeats.
bool line_verdict(const MetaRow& row, const std::vector<std::string>& tokens,
                  const VowelSet& vowels = VowelSet());

struct ClassifyContext {
  const MorphemeInventory* inventory = nullptr;
  const std::vector<PatternPair>* patterns = nullptr;
  const std::unordered_set<std::string>* trg_vocab = nullptr;  // folded entries
  VowelSet vowels;
  double similarity_threshold = 0.34;  // normalized edit distance for S3/T2
};

struct Classification {
  ErrorCode code = ErrorCode::M1;
  Confidence confidence = Confidence::Exact;
  bool needs_human = false;
};

/// Applies the fixed rule order A1, O1, T3, T4, T1, S2, S1, T5, S3/T2, M1.
/// Total: every incorrect line receives exactly one code.
Classification classify_error(const MetaRow& row, const std::vector<std::string>& tokens,
                              const ClassifyContext& ctx);

/// line-parallel scoring of a system output against the test metadata.
Report evaluate(const std::vector<std::string>& output_lines, const std::vector<MetaRow>& meta,
                const ClassifyContext& ctx);

void write_report(const Report& report, std::ostream& out);   // pattern_id, variant, n, accuracy
void write_buckets(const Report& report, std::ostream& out);  // pattern_id, bucket, n, accuracy
void write_errors(const Report& report, std::ostream& out);   // line_no, code, confidence, needs_human

}  // namespace synmorph

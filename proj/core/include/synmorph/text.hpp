// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace synmorph {

// One decoded code point with its byte position inside the original string.
struct Utf8Char {
  char32_t cp = 0;
  std::size_t offset = 0;
  std::size_t size = 0;
};

/// Decodes a UTF-8 string into code points. Invalid bytes are passed through
/// one byte at a time so that arbitrary corpus data never throws.
std::vector<Utf8Char> utf8_chars(std::string_view s);

std::size_t utf8_length(std::string_view s);

std::string utf8_encode(char32_t cp);

/// Lowercases ASCII plus the Latin-1 supplement block (covers umlauts and ß).
char32_t fold_cp(char32_t cp);

bool is_upper_cp(char32_t cp);

std::string fold_case(std::string_view s);

/// Uppercases the first code point (ASCII + Latin-1), leaves the rest alone.
std::string upper_first(std::string_view s);

// Vowel alphabet used for stem-vowel extraction. Defaults to a e i o u ä ö ü;
// 'y' is deliberately not a vowel.
class VowelSet {
 public:
  VowelSet();
  explicit VowelSet(std::string_view chars);
  bool contains(char32_t cp) const;
  bool empty() const { return cps_.empty(); }

 private:
  std::unordered_set<char32_t> cps_;
};

std::vector<std::string> split_ws(std::string_view line);
std::vector<std::string> split_char(std::string_view line, char sep);
std::string join(const std::vector<std::string>& tokens, char sep = ' ');

/// Output-token normalization for evaluation: strips leading/trailing ASCII
/// punctuation (keeping '@', which marks abstract tokens) and case-folds.
std::string strip_punct_fold(std::string_view token);

/// Edit distance over code points.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// levenshtein(a, b) / max(|a|, |b|); 0 for two empty strings.
double normalized_levenshtein(std::string_view a, std::string_view b);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

}  // namespace synmorph

// Apache License, Version 2.0, refer to LICENSE.txt
#include "synmorph/text.hpp"

#include <algorithm>
#include <cctype>

namespace synmorph {

std::vector<Utf8Char> utf8_chars(std::string_view s) {
  std::vector<Utf8Char> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char b = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = b;
    if (b < 0x80) {
      len = 1;
    } else if ((b >> 5) == 0x6 && i + 1 < s.size()) {
      len = 2;
      cp = (b & 0x1F) << 6 | (static_cast<unsigned char>(s[i + 1]) & 0x3F);
    } else if ((b >> 4) == 0xE && i + 2 < s.size()) {
      len = 3;
      cp = (b & 0x0F) << 12 | (static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6 |
           (static_cast<unsigned char>(s[i + 2]) & 0x3F);
    } else if ((b >> 3) == 0x1E && i + 3 < s.size()) {
      len = 4;
      cp = (b & 0x07) << 18 | (static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12 |
           (static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6 |
           (static_cast<unsigned char>(s[i + 3]) & 0x3F);
    }
    out.push_back({cp, i, len});
    i += len;
  }
  return out;
}

std::size_t utf8_length(std::string_view s) { return utf8_chars(s).size(); }

std::string utf8_encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

char32_t fold_cp(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  // Latin-1 supplement uppercase letters À..Þ, skipping the multiplication sign.
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  return cp;
}

bool is_upper_cp(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return true;
  return cp >= 0xC0 && cp <= 0xDE && cp != 0xD7;
}

std::string fold_case(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const Utf8Char& c : utf8_chars(s)) out += utf8_encode(fold_cp(c.cp));
  return out;
}

std::string upper_first(std::string_view s) {
  const auto chars = utf8_chars(s);
  if (chars.empty()) return std::string(s);
  char32_t first = chars[0].cp;
  if (first >= U'a' && first <= U'z') {
    first -= 0x20;
  } else if (first >= 0xE0 && first <= 0xFE && first != 0xF7) {
    first -= 0x20;
  }
  return utf8_encode(first) + std::string(s.substr(chars[0].size));
}

VowelSet::VowelSet() : VowelSet("aeiouäöü") {}

VowelSet::VowelSet(std::string_view chars) {
  for (const Utf8Char& c : utf8_chars(chars)) cps_.insert(fold_cp(c.cp));
}

bool VowelSet::contains(char32_t cp) const { return cps_.count(fold_cp(cp)) > 0; }

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> split_char(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      out.emplace_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& tokens, char sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(sep);
    out += tokens[i];
  }
  return out;
}

namespace {

bool strippable_punct(char32_t cp) {
  if (cp == U'@') return false;
  return cp < 0x80 && std::ispunct(static_cast<int>(cp));
}

}  // namespace

std::string strip_punct_fold(std::string_view token) {
  const auto chars = utf8_chars(token);
  std::size_t begin = 0;
  std::size_t end = chars.size();
  while (begin < end && strippable_punct(chars[begin].cp)) ++begin;
  while (end > begin && strippable_punct(chars[end - 1].cp)) --end;
  std::string out;
  for (std::size_t i = begin; i < end; ++i) out += utf8_encode(fold_cp(chars[i].cp));
  return out;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  const auto ca = utf8_chars(a);
  const auto cb = utf8_chars(b);
  const std::size_t n = ca.size();
  const std::size_t m = cb.size();
  if (n == 0) return m;
  if (m == 0) return n;
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = prev[j - 1] + (ca[i - 1].cp == cb[j - 1].cp ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double normalized_levenshtein(std::string_view a, std::string_view b) {
  const std::size_t la = utf8_length(a);
  const std::size_t lb = utf8_length(b);
  const std::size_t longest = std::max(la, lb);
  if (longest == 0) return 0.0;
  return static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace synmorph

// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace synmorph {

struct Token {
  int index = 0;  // 1-based CoNLL-U ID
  std::string form;
  std::string lemma;
  std::string upos;
  int head = 0;  // 0 = root, otherwise the 1-based index of the head token
  std::string deprel;
};

struct AnnotatedSentence {
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  // 0-based position access; Token::index stays 1-based.
  const Token& at(std::size_t pos) const { return tokens[pos]; }
  Token& at(std::size_t pos) { return tokens[pos]; }
};

// Word alignment as a sorted, duplicate-free set of 0-based (src, trg) links.
class AlignmentSet {
 public:
  AlignmentSet() = default;
  explicit AlignmentSet(std::vector<std::pair<int, int>> links);

  bool contains(int src, int trg) const;
  std::vector<int> targets_of(int src) const;
  std::vector<int> sources_of(int trg) const;
  /// True when src aligns only to trg and trg only to src.
  bool one_to_one(int src, int trg) const;

  const std::vector<std::pair<int, int>>& links() const { return links_; }
  std::size_t size() const { return links_.size(); }
  bool empty() const { return links_.empty(); }

 private:
  std::vector<std::pair<int, int>> links_;
};

struct AnnotatedSentencePair {
  std::int64_t pair_id = 0;  // 1-based input line number
  AnnotatedSentence src;     // German side
  AnnotatedSentence trg;     // English side
  AlignmentSet alignment;
};

/// Reads blank-line separated CoNLL-U blocks. Multiword ranges ("3-4") and
/// empty nodes ("3.1") are dropped; only ID, FORM, LEMMA, UPOS, HEAD and
/// DEPREL are kept.
std::vector<AnnotatedSentence> parse_conllu(std::istream& in);
std::vector<AnnotatedSentence> parse_conllu_file(const std::string& path);

void write_conllu(const AnnotatedSentence& sentence, std::ostream& out);
void write_conllu_file(const std::vector<AnnotatedSentence>& sentences, const std::string& path);

/// Parses one Pharaoh line of space-separated 0-based "i-j" pairs.
AlignmentSet parse_alignment_line(std::string_view line);

std::vector<AnnotatedSentencePair> load_parallel(const std::string& src_conllu,
                                                 const std::string& trg_conllu,
                                                 const std::string& align_file);

/// Space-joined token forms; pre-tokenized text in, pre-tokenized text out.
std::string render(const AnnotatedSentence& sentence);

}  // namespace synmorph

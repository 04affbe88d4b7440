// Apache License, Version 2.0, refer to LICENSE.txt
#include "synmorph/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "synmorph/errors.hpp"
#include "synmorph/log.hpp"
#include "synmorph/text.hpp"

namespace synmorph {

AlignmentSet::AlignmentSet(std::vector<std::pair<int, int>> links) : links_(std::move(links)) {
  std::sort(links_.begin(), links_.end());
  links_.erase(std::unique(links_.begin(), links_.end()), links_.end());
}

bool AlignmentSet::contains(int src, int trg) const {
  return std::binary_search(links_.begin(), links_.end(), std::make_pair(src, trg));
}

std::vector<int> AlignmentSet::targets_of(int src) const {
  std::vector<int> out;
  auto it = std::lower_bound(links_.begin(), links_.end(), std::make_pair(src, 0));
  for (; it != links_.end() && it->first == src; ++it) out.push_back(it->second);
  return out;
}

std::vector<int> AlignmentSet::sources_of(int trg) const {
  std::vector<int> out;
  for (const auto& [s, t] : links_) {
    if (t == trg) out.push_back(s);
  }
  return out;
}

bool AlignmentSet::one_to_one(int src, int trg) const {
  if (!contains(src, trg)) return false;
  return targets_of(src).size() == 1 && sources_of(trg).size() == 1;
}

namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const auto result = std::from_chars(s.data(), s.data() + s.size(), out);
  return result.ec == std::errc() && result.ptr == s.data() + s.size();
}

void validate_sentence(const AnnotatedSentence& sentence, std::size_t line_no) {
  const int n = static_cast<int>(sentence.size());
  int roots = 0;
  for (int pos = 0; pos < n; ++pos) {
    const Token& tok = sentence.at(pos);
    if (tok.index != pos + 1) {
      throw StructureError("non-contiguous token indices in sentence ending at line " +
                           std::to_string(line_no));
    }
    if (tok.head < 0 || tok.head > n) {
      throw StructureError("token " + std::to_string(tok.index) + " has head " +
                           std::to_string(tok.head) + " outside sentence of " +
                           std::to_string(n) + " tokens (line " + std::to_string(line_no) + ")");
    }
    if (tok.head == 0) ++roots;
  }
  if (roots != 1) {
    throw StructureError("sentence ending at line " + std::to_string(line_no) + " has " +
                         std::to_string(roots) + " root tokens, expected exactly 1");
  }
}

}  // namespace

std::vector<AnnotatedSentence> parse_conllu(std::istream& in) {
  std::vector<AnnotatedSentence> sentences;
  AnnotatedSentence current;
  std::string line;
  std::size_t line_no = 0;

  auto flush = [&](std::size_t at_line) {
    if (current.empty()) return;
    validate_sentence(current, at_line);
    sentences.push_back(std::move(current));
    current = AnnotatedSentence{};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush(line_no);
      continue;
    }
    if (line[0] == '#') continue;

    const std::vector<std::string> cols = split_char(line, '\t');
    if (cols.size() != 10) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 10 tab-separated columns, got " +
                       std::to_string(cols.size()));
    }
    const std::string& id = cols[0];
    // Multiword-token ranges and empty nodes carry no dependency row of their own.
    if (id.find('-') != std::string::npos || id.find('.') != std::string::npos) continue;

    Token tok;
    if (!parse_int(id, tok.index) || tok.index < 1) {
      throw ParseError("line " + std::to_string(line_no) + ": non-numeric token ID '" + id + "'");
    }
    tok.form = cols[1];
    tok.lemma = cols[2];
    tok.upos = cols[3];
    if (!parse_int(cols[6], tok.head)) {
      throw ParseError("line " + std::to_string(line_no) + ": non-numeric HEAD '" + cols[6] + "'");
    }
    tok.deprel = cols[7];
    if (tok.form.empty() || tok.form.find(' ') != std::string::npos) {
      throw StructureError("line " + std::to_string(line_no) + ": empty or whitespace FORM");
    }
    current.tokens.push_back(std::move(tok));
  }
  flush(line_no + 1);
  return sentences;
}

std::vector<AnnotatedSentence> parse_conllu_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CoNLL-U file: " + path);
  try {
    return parse_conllu(in);
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_conllu(const AnnotatedSentence& sentence, std::ostream& out) {
  for (const Token& tok : sentence.tokens) {
    out << tok.index << '\t' << tok.form << '\t' << tok.lemma << '\t' << tok.upos << '\t' << '_'
        << '\t' << '_' << '\t' << tok.head << '\t' << tok.deprel << '\t' << '_' << '\t' << '_'
        << '\n';
  }
  out << '\n';
}

void write_conllu_file(const std::vector<AnnotatedSentence>& sentences, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write CoNLL-U file: " + path);
  for (const AnnotatedSentence& s : sentences) write_conllu(s, out);
}

AlignmentSet parse_alignment_line(std::string_view line) {
  std::vector<std::pair<int, int>> links;
  for (const std::string& item : split_ws(line)) {
    const std::size_t dash = item.find('-');
    if (dash == std::string::npos) {
      throw ParseError("alignment item '" + item + "' has no '-'");
    }
    int s = 0;
    int t = 0;
    if (!parse_int(std::string_view(item).substr(0, dash), s) ||
        !parse_int(std::string_view(item).substr(dash + 1), t) || s < 0 || t < 0) {
      throw ParseError("alignment item '" + item + "' is not a pair of non-negative integers");
    }
    links.emplace_back(s, t);
  }
  return AlignmentSet(std::move(links));
}

std::vector<AnnotatedSentencePair> load_parallel(const std::string& src_conllu,
                                                 const std::string& trg_conllu,
                                                 const std::string& align_file) {
  std::vector<AnnotatedSentence> src = parse_conllu_file(src_conllu);
  std::vector<AnnotatedSentence> trg = parse_conllu_file(trg_conllu);

  std::ifstream align_in(align_file);
  if (!align_in) throw ConfigError("cannot open alignment file: " + align_file);
  std::vector<AlignmentSet> alignments;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(align_in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      alignments.push_back(parse_alignment_line(line));
    } catch (const Error& e) {
      throw ParseError(align_file + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  if (src.size() != trg.size() || src.size() != alignments.size()) {
    throw ConfigError("sentence count mismatch: " + src_conllu + " has " +
                      std::to_string(src.size()) + ", " + trg_conllu + " has " +
                      std::to_string(trg.size()) + ", " + align_file + " has " +
                      std::to_string(alignments.size()));
  }

  std::vector<AnnotatedSentencePair> pairs;
  pairs.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    AnnotatedSentencePair pair;
    pair.pair_id = static_cast<std::int64_t>(i + 1);
    pair.src = std::move(src[i]);
    pair.trg = std::move(trg[i]);
    pair.alignment = std::move(alignments[i]);
    for (const auto& [s, t] : pair.alignment.links()) {
      if (s >= static_cast<int>(pair.src.size()) || t >= static_cast<int>(pair.trg.size())) {
        throw StructureError("pair " + std::to_string(pair.pair_id) + ": alignment " +
                             std::to_string(s) + "-" + std::to_string(t) +
                             " outside sentence lengths " + std::to_string(pair.src.size()) + "/" +
                             std::to_string(pair.trg.size()));
      }
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::string render(const AnnotatedSentence& sentence) {
  if (sentence.empty()) {
    log_line("warn", {{"reason", "rendering empty sentence"}});
    return "";
  }
  std::string out;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += sentence.at(i).form;
  }
  return out;
}

}  // namespace synmorph

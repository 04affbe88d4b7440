// Apache License, Version 2.0, refer to LICENSE.txt
#include "synmorph/matcher.hpp"

#include <algorithm>

#include "synmorph/parallel.hpp"
#include "synmorph/text.hpp"

namespace synmorph {

namespace {

bool trigger_upos_ok(const std::string& upos, BaseSelector selector) {
  switch (selector) {
    case BaseSelector::PrepObject: return upos == "ADP";
    case BaseSelector::CardinalHead: return upos == "NUM";
    case BaseSelector::AdjectiveAfterModifier: return upos == "ADV" || upos == "PART";
    case BaseSelector::RandomAlignedNoun: return false;
  }
  return false;
}

bool lemma_matches(const Token& tok, const std::string& lemma) {
  return fold_case(tok.lemma) == fold_case(lemma);
}

/// Returns the number of tokens covered by the trigger sequence starting at
/// pos (including a single comma between elements), or 0 on no match.
int trigger_span_at(const AnnotatedSentence& sentence, int pos, const TriggerSpec& trigger,
                    BaseSelector selector) {
  int cursor = pos;
  const int n = static_cast<int>(sentence.size());
  for (std::size_t k = 0; k < trigger.lemmas.size(); ++k) {
    if (k > 0 && cursor < n && sentence.at(cursor).form == ",") ++cursor;
    if (cursor >= n) return 0;
    const Token& tok = sentence.at(cursor);
    if (!lemma_matches(tok, trigger.lemmas[k]) || !trigger_upos_ok(tok.upos, selector)) return 0;
    ++cursor;
  }
  return cursor - pos;
}

int head_position(const AnnotatedSentence& sentence, int pos) {
  const int head = sentence.at(pos).head;
  return head == 0 ? -1 : head - 1;
}

/// Base token for a matched trigger: dependency attachment first, linear
/// adjacency as fallback where the trigger directly precedes the base.
int locate_base(const AnnotatedSentence& sentence, int trigger_pos, int trigger_len,
                BaseSelector selector) {
  const int n = static_cast<int>(sentence.size());
  switch (selector) {
    case BaseSelector::PrepObject: {
      const int head = head_position(sentence, trigger_pos);
      if (head >= 0 && sentence.at(head).upos == "NOUN") return head;
      // Some schemes attach the noun below the preposition instead.
      const int trigger_index = sentence.at(trigger_pos).index;
      for (int t = 0; t < n; ++t) {
        if (sentence.at(t).head == trigger_index && sentence.at(t).upos == "NOUN") return t;
      }
      return -1;
    }
    case BaseSelector::CardinalHead: {
      const int head = head_position(sentence, trigger_pos);
      if (head >= 0 && sentence.at(head).upos == "NOUN") return head;
      const int next = trigger_pos + trigger_len;
      if (next < n && sentence.at(next).upos == "NOUN") return next;
      return -1;
    }
    case BaseSelector::AdjectiveAfterModifier: {
      const int last = trigger_pos + trigger_len - 1;
      const int head = head_position(sentence, last);
      if (head >= 0 && sentence.at(head).upos == "ADJ") return head;
      const int next = trigger_pos + trigger_len;
      if (next < n && sentence.at(next).upos == "ADJ") return next;
      return -1;
    }
    case BaseSelector::RandomAlignedNoun:
      return -1;
  }
  return -1;
}

}  // namespace

std::optional<MatchSite> match_pattern(const AnnotatedSentencePair& pair,
                                       const PatternPair& pattern) {
  if (pattern.base_selector == BaseSelector::RandomAlignedNoun) return std::nullopt;
  const AnnotatedSentence& src = pair.src;
  const AnnotatedSentence& trg = pair.trg;
  const int ns = static_cast<int>(src.size());
  const int nt = static_cast<int>(trg.size());

  for (int i = 0; i < ns; ++i) {
    const int src_len = trigger_span_at(src, i, pattern.src_trigger, pattern.base_selector);
    if (src_len == 0) continue;
    const int src_base = locate_base(src, i, src_len, pattern.base_selector);
    if (src_base < 0) continue;

    for (int j = 0; j < nt; ++j) {
      const int trg_len = trigger_span_at(trg, j, pattern.trg_trigger, pattern.base_selector);
      if (trg_len == 0) continue;
      if (!pair.alignment.contains(i, j)) continue;
      const int trg_base = locate_base(trg, j, trg_len, pattern.base_selector);
      if (trg_base < 0) continue;
      if (!pair.alignment.one_to_one(src_base, trg_base)) continue;

      MatchSite site;
      site.pair_id = pair.pair_id;
      site.pattern_id = pattern.id;
      site.src_trigger = i;
      site.src_trigger_len = src_len;
      site.trg_trigger = j;
      site.trg_trigger_len = trg_len;
      site.src_base = src_base;
      site.trg_base = trg_base;
      return site;
    }
  }
  return std::nullopt;
}

std::optional<MatchSite> match_compound_site(const AnnotatedSentencePair& pair,
                                             const PatternPair& pattern, Rng& rng) {
  std::vector<std::pair<int, int>> eligible;
  const int ns = static_cast<int>(pair.src.size());
  for (int i = 0; i < ns; ++i) {
    if (pair.src.at(i).upos != "NOUN") continue;
    const std::vector<int> targets = pair.alignment.targets_of(i);
    if (targets.size() != 1) continue;
    const int t = targets[0];
    if (pair.trg.at(t).upos != "NOUN") continue;
    if (pair.alignment.sources_of(t).size() != 1) continue;
    eligible.emplace_back(i, t);
  }
  if (eligible.empty()) return std::nullopt;
  const auto& [src_base, trg_base] = eligible[rng.below(eligible.size())];

  MatchSite site;
  site.pair_id = pair.pair_id;
  site.pattern_id = pattern.id;
  site.src_base = src_base;
  site.trg_base = trg_base;
  return site;
}

ScanResult scan_corpus(const std::vector<AnnotatedSentencePair>& pairs,
                       const std::vector<PatternPair>& patterns, std::uint64_t seed,
                       unsigned threads) {
  std::vector<std::size_t> compound_group;
  std::size_t first_compound = patterns.size();
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    if (patterns[p].base_selector == BaseSelector::RandomAlignedNoun) {
      if (compound_group.empty()) first_compound = p;
      compound_group.push_back(p);
    }
  }

  std::vector<std::optional<MatchSite>> slots(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const AnnotatedSentencePair& pair = pairs[k];
      Rng rng = derive_rng(seed, /*stream=*/0x5CA7ULL, static_cast<std::uint64_t>(pair.pair_id));
      for (std::size_t p = 0; p < patterns.size(); ++p) {
        std::optional<MatchSite> site;
        if (patterns[p].base_selector == BaseSelector::RandomAlignedNoun) {
          if (p != first_compound) continue;
          site = match_compound_site(pair, patterns[p], rng);
          if (site) {
            site->pattern_id = patterns[compound_group[rng.below(compound_group.size())]].id;
          }
        } else {
          site = match_pattern(pair, patterns[p]);
        }
        if (site) {
          slots[k] = std::move(site);
          break;
        }
      }
    }
  });

  ScanResult result;
  for (const PatternPair& p : patterns) result.match_counts[p.id] = 0;
  for (auto& slot : slots) {
    if (!slot) continue;
    result.match_counts[slot->pattern_id] += 1;
    result.sites.push_back(std::move(*slot));
  }
  return result;
}

}  // namespace synmorph

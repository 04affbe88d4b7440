// Apache License, Version 2.0, refer to LICENSE.txt
#include "synmorph/augmenter.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "synmorph/errors.hpp"
#include "synmorph/log.hpp"
#include "synmorph/matcher.hpp"
#include "synmorph/rng.hpp"
#include "synmorph/text.hpp"
#include "synmorph/transforms.hpp"

namespace synmorph {

std::string to_string(SubstitutionKind k) {
  switch (k) {
    case SubstitutionKind::PrepSwap: return "prep_swap";
    case SubstitutionKind::CardinalToTwo: return "cardinal_to_two";
    case SubstitutionKind::ModifierInsert: return "modifier_insert";
  }
  return "?";
}

namespace {

std::string candidate_id(std::int64_t origin, SubstitutionKind kind, int src_pos,
                         const std::string& pattern_id) {
  return "p" + std::to_string(origin) + "_" + to_string(kind) + "_" + std::to_string(src_pos) +
         "_" + pattern_id;
}

bool lemma_equals(const Token& tok, const std::string& lemma) {
  return fold_case(tok.lemma) == fold_case(lemma);
}

AnnotatedSentencePair swap_tokens(const AnnotatedSentencePair& pair, int src_pos,
                                  const std::string& src_form, int trg_pos,
                                  const std::string& trg_form) {
  AnnotatedSentencePair out = pair;
  out.src.at(src_pos).form = src_form;
  out.src.at(src_pos).lemma = src_form;
  out.trg.at(trg_pos).form = trg_form;
  out.trg.at(trg_pos).lemma = trg_form;
  return out;
}

AnnotatedSentence insert_modifier(const AnnotatedSentence& sentence, int at,
                                  const std::vector<std::string>& lemmas) {
  const int k = static_cast<int>(lemmas.size());
  auto remap = [&](int old_index) {
    if (old_index == 0) return 0;
    return old_index - 1 >= at ? old_index + k : old_index;
  };
  AnnotatedSentence out;
  out.tokens.reserve(sentence.size() + lemmas.size());
  for (int pos = 0; pos < static_cast<int>(sentence.size()); ++pos) {
    if (pos == at) {
      for (const std::string& lemma : lemmas) {
        Token t;
        t.index = static_cast<int>(out.tokens.size()) + 1;
        t.form = lemma;
        t.lemma = lemma;
        t.upos = "ADV";
        t.head = at + k + 1;  // the adjective, post-insertion (1-based)
        t.deprel = "advmod";
        out.tokens.push_back(std::move(t));
      }
    }
    Token t = sentence.at(pos);
    t.index = static_cast<int>(out.tokens.size()) + 1;
    t.head = remap(t.head);
    out.tokens.push_back(std::move(t));
  }
  return out;
}

AlignmentSet shift_alignment(const AlignmentSet& alignment, int src_at, int src_k, int trg_at,
                             int trg_k, std::vector<std::pair<int, int>> extra) {
  std::vector<std::pair<int, int>> links;
  links.reserve(alignment.size() + extra.size());
  for (auto [s, t] : alignment.links()) {
    if (s >= src_at) s += src_k;
    if (t >= trg_at) t += trg_k;
    links.emplace_back(s, t);
  }
  for (const auto& link : extra) links.push_back(link);
  return AlignmentSet(std::move(links));
}

bool modifier_like(const std::string& upos) { return upos == "ADV" || upos == "PART"; }

}  // namespace

std::vector<AugCandidate> generate_candidates(const AnnotatedSentencePair& pair,
                                              const std::vector<PatternPair>& patterns) {
  std::vector<AugCandidate> out;
  const int ns = static_cast<int>(pair.src.size());

  for (int i = 0; i < ns; ++i) {
    const Token& src_tok = pair.src.at(i);
    const std::vector<int> targets = pair.alignment.targets_of(i);
    if (targets.size() != 1) continue;
    const int j = targets[0];
    if (pair.alignment.sources_of(j).size() != 1) continue;
    const Token& trg_tok = pair.trg.at(j);

    if (src_tok.upos == "ADP" && trg_tok.upos == "ADP") {
      for (const PatternPair& p : patterns) {
        if (p.base_selector != BaseSelector::PrepObject) continue;
        const std::string& new_src = p.src_trigger.lemmas.at(0);
        const std::string& new_trg = p.trg_trigger.lemmas.at(0);
        if (lemma_equals(src_tok, new_src) && lemma_equals(trg_tok, new_trg)) continue;
        AugCandidate cand;
        cand.id = candidate_id(pair.pair_id, SubstitutionKind::PrepSwap, i, p.id);
        cand.origin_pair_id = pair.pair_id;
        cand.kind = SubstitutionKind::PrepSwap;
        cand.target_pattern_id = p.id;
        cand.pair = swap_tokens(pair, i, new_src, j, new_trg);
        cand.src_old = {src_tok.form};
        cand.src_new = {new_src};
        cand.trg_old = {trg_tok.form};
        cand.trg_new = {new_trg};
        out.push_back(std::move(cand));
      }
    } else if (src_tok.upos == "NUM" && trg_tok.upos == "NUM") {
      for (const PatternPair& p : patterns) {
        if (p.base_selector != BaseSelector::CardinalHead) continue;
        const std::string& new_src = p.src_trigger.lemmas.at(0);
        const std::string& new_trg = p.trg_trigger.lemmas.at(0);
        if (lemma_equals(src_tok, new_src) && lemma_equals(trg_tok, new_trg)) continue;
        AugCandidate cand;
        cand.id = candidate_id(pair.pair_id, SubstitutionKind::CardinalToTwo, i, p.id);
        cand.origin_pair_id = pair.pair_id;
        cand.kind = SubstitutionKind::CardinalToTwo;
        cand.target_pattern_id = p.id;
        cand.pair = swap_tokens(pair, i, new_src, j, new_trg);
        cand.src_old = {src_tok.form};
        cand.src_new = {new_src};
        cand.trg_old = {trg_tok.form};
        cand.trg_new = {new_trg};
        out.push_back(std::move(cand));
      }
    } else if (src_tok.upos == "ADJ" && trg_tok.upos == "ADJ") {
      // Skip adjectives that already carry a modifier right before them.
      if (i > 0 && modifier_like(pair.src.at(i - 1).upos)) continue;
      if (j > 0 && modifier_like(pair.trg.at(j - 1).upos)) continue;
      for (const PatternPair& p : patterns) {
        if (p.base_selector != BaseSelector::AdjectiveAfterModifier) continue;
        AugCandidate cand;
        cand.id = candidate_id(pair.pair_id, SubstitutionKind::ModifierInsert, i, p.id);
        cand.origin_pair_id = pair.pair_id;
        cand.kind = SubstitutionKind::ModifierInsert;
        cand.target_pattern_id = p.id;
        cand.pair.pair_id = pair.pair_id;
        cand.pair.src = insert_modifier(pair.src, i, p.src_trigger.lemmas);
        cand.pair.trg = insert_modifier(pair.trg, j, p.trg_trigger.lemmas);
        const int ks = static_cast<int>(p.src_trigger.lemmas.size());
        const int kt = static_cast<int>(p.trg_trigger.lemmas.size());
        std::vector<std::pair<int, int>> extra;
        for (int m = 0; m < std::min(ks, kt); ++m) extra.emplace_back(i + m, j + m);
        cand.pair.alignment = shift_alignment(pair.alignment, i, ks, j, kt, std::move(extra));
        cand.src_new = p.src_trigger.lemmas;
        cand.trg_new = p.trg_trigger.lemmas;
        out.push_back(std::move(cand));
      }
    }
  }
  return out;
}

void cap_candidates(std::vector<AugCandidate>& candidates, std::size_t per_origin_cap,
                    std::uint64_t seed) {
  if (per_origin_cap == 0) {
    candidates.clear();
    return;
  }
  std::map<std::int64_t, std::vector<std::size_t>> by_origin;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    by_origin[candidates[i].origin_pair_id].push_back(i);
  }
  std::vector<bool> keep(candidates.size(), true);
  for (auto& [origin, indices] : by_origin) {
    if (indices.size() <= per_origin_cap) continue;
    Rng rng = derive_rng(seed, /*stream=*/0xCAFEULL, static_cast<std::uint64_t>(origin));
    for (std::size_t i = 0; i < per_origin_cap; ++i) {
      const std::size_t j = i + rng.below(indices.size() - i);
      std::swap(indices[i], indices[j]);
    }
    for (std::size_t i = per_origin_cap; i < indices.size(); ++i) keep[indices[i]] = false;
  }
  std::vector<AugCandidate> kept;
  kept.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (keep[i]) kept.push_back(std::move(candidates[i]));
  }
  candidates = std::move(kept);
}

std::map<std::string, ScoreEntry> parse_scores(std::istream& in) {
  std::map<std::string, ScoreEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cols = split_char(line, '\t');
    if (cols[0] == "candidate_id") continue;
    if (cols.size() != 3) {
      throw ParseError("scores line " + std::to_string(line_no) + ": expected 3 columns");
    }
    try {
      out[cols[0]] = {std::stod(cols[1]), std::stod(cols[2])};
    } catch (const std::exception&) {
      throw ParseError("scores line " + std::to_string(line_no) + ": bad delta value");
    }
  }
  return out;
}

std::map<std::string, ScoreEntry> load_scores(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open score file: " + path);
  return parse_scores(in);
}

UnigramScorer::UnigramScorer(const std::vector<AnnotatedSentencePair>& corpus) {
  for (const AnnotatedSentencePair& pair : corpus) {
    for (const Token& t : pair.src.tokens) {
      src_counts_[fold_case(t.form)] += 1;
      ++src_total_;
    }
    for (const Token& t : pair.trg.tokens) {
      trg_counts_[fold_case(t.form)] += 1;
      ++trg_total_;
    }
  }
}

double UnigramScorer::surprisal(const std::unordered_map<std::string, std::size_t>& counts,
                                std::size_t total, const std::string& token) const {
  const auto it = counts.find(fold_case(token));
  const double count = it == counts.end() ? 0.0 : static_cast<double>(it->second);
  const double smoothed = (count + 1.0) / (static_cast<double>(total) + counts.size() + 1.0);
  return -std::log(smoothed);
}

double UnigramScorer::score(const AugCandidate& candidate) const {
  auto side_delta = [this](const std::unordered_map<std::string, std::size_t>& counts,
                           std::size_t total, const std::vector<std::string>& old_tokens,
                           const std::vector<std::string>& new_tokens) {
    double delta = 0.0;
    for (const std::string& t : new_tokens) delta += surprisal(counts, total, t);
    for (const std::string& t : old_tokens) delta -= surprisal(counts, total, t);
    return delta;
  };
  const double src = side_delta(src_counts_, src_total_, candidate.src_old, candidate.src_new);
  const double trg = side_delta(trg_counts_, trg_total_, candidate.trg_old, candidate.trg_new);
  return (src + trg) / 2.0;
}

void attach_scores(std::vector<AugCandidate>& candidates,
                   const std::map<std::string, ScoreEntry>& scores, const UnigramScorer* fallback) {
  std::unordered_set<std::string> known;
  known.reserve(candidates.size());
  for (const AugCandidate& c : candidates) known.insert(c.id);
  for (const auto& [id, entry] : scores) {
    (void)entry;
    if (known.count(id) == 0) {
      log_line("warn", {{"reason", "score for unknown candidate"}, {"candidate_id", id}});
    }
  }
  for (AugCandidate& c : candidates) {
    const auto it = scores.find(c.id);
    if (it != scores.end()) {
      c.score = (it->second.src_delta + it->second.trg_delta) / 2.0;
    } else if (fallback != nullptr) {
      c.score = fallback->score(c);
    }
  }
}

std::vector<BalancedSite> realize_candidates(const std::vector<AugCandidate>& candidates,
                                             const std::vector<PatternPair>& patterns,
                                             const MorphemeInventory& inventory,
                                             const Manifest& manifest, bool abstract_variants,
                                             const VowelSet& vowels) {
  std::map<std::string, const PatternPair*> by_id;
  for (const PatternPair& p : patterns) by_id[p.id] = &p;

  std::vector<BalancedSite> out;
  for (const AugCandidate& cand : candidates) {
    const auto pit = by_id.find(cand.target_pattern_id);
    if (pit == by_id.end()) {
      throw ConfigError("candidate " + cand.id + " targets unknown pattern '" +
                        cand.target_pattern_id + "'");
    }
    const PatternPair& pattern = *pit->second;
    const std::optional<MatchSite> site = match_pattern(cand.pair, pattern);
    if (!site) continue;
    const PatternMorphemes& morphemes = inventory.require(pattern.id);
    auto surface = transform_site(cand.pair, *site, pattern, morphemes, Variant::Surface, vowels);
    if (!surface) continue;

    BalancedSite bs;
    bs.augmented = true;
    bs.candidate_id = cand.id;
    bs.score = cand.score.value_or(0.0);
    bs.surface.record = std::move(*surface);
    bs.surface.base_train_freq =
        manifest.train_frequency(pattern.id, bs.surface.record.base_src_lemma);
    if (abstract_variants) {
      auto abstract_rec =
          transform_site(cand.pair, *site, pattern, morphemes, Variant::Abstract, vowels);
      TestRecord tr;
      tr.record = std::move(*abstract_rec);
      tr.base_train_freq = bs.surface.base_train_freq;
      bs.abstract_rec = std::move(tr);
    }
    bs.bucket = bucket_of(bs.surface.base_train_freq);
    out.push_back(std::move(bs));
  }
  return out;
}

std::vector<BalancedSite> assemble_balanced(const std::vector<BalancedSite>& originals,
                                            const std::vector<BalancedSite>& augmented,
                                            std::size_t bucket_cap) {
  using GroupKey = std::pair<std::string, int>;  // pattern id, bucket index
  std::map<GroupKey, std::vector<const BalancedSite*>> orig_groups;
  std::map<GroupKey, std::vector<const BalancedSite*>> aug_groups;

  auto key_of = [](const BalancedSite& s) {
    const std::string bucket = s.bucket.empty() ? bucket_of(s.surface.base_train_freq) : s.bucket;
    return GroupKey{s.surface.record.pattern_id, bucket_index(bucket)};
  };
  for (const BalancedSite& s : originals) orig_groups[key_of(s)].push_back(&s);
  for (const BalancedSite& s : augmented) aug_groups[key_of(s)].push_back(&s);

  std::vector<GroupKey> keys;
  for (const auto& [k, v] : orig_groups) keys.push_back(k);
  for (const auto& [k, v] : aug_groups) {
    if (orig_groups.count(k) == 0) keys.push_back(k);
  }
  std::sort(keys.begin(), keys.end());

  std::vector<BalancedSite> out;
  for (const GroupKey& key : keys) {
    std::size_t taken = 0;
    if (const auto it = orig_groups.find(key); it != orig_groups.end()) {
      for (const BalancedSite* s : it->second) {
        if (taken >= bucket_cap) break;
        BalancedSite copy = *s;
        if (copy.bucket.empty()) copy.bucket = bucket_of(copy.surface.base_train_freq);
        out.push_back(std::move(copy));
        ++taken;
      }
    }
    if (const auto it = aug_groups.find(key); it != aug_groups.end()) {
      std::vector<const BalancedSite*> pool = it->second;
      std::stable_sort(pool.begin(), pool.end(), [](const BalancedSite* a, const BalancedSite* b) {
        if (a->score != b->score) return a->score < b->score;
        return a->candidate_id < b->candidate_id;
      });
      for (const BalancedSite* s : pool) {
        if (taken >= bucket_cap) break;
        BalancedSite copy = *s;
        if (copy.bucket.empty()) copy.bucket = bucket_of(copy.surface.base_train_freq);
        out.push_back(std::move(copy));
        ++taken;
      }
    }
  }
  return out;
}

}  // namespace synmorph

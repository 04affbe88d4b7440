// Apache License, Version 2.0, refer to LICENSE.txt
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <sstream>

#include "doctest.h"
#include "synmorph/augmenter.hpp"
#include "synmorph/evaluator.hpp"
#include "synmorph/matcher.hpp"
#include "testutil.hpp"

using namespace synmorph;
using testutil::tok;

namespace {

std::map<std::string, std::size_t> count_by_kind(const std::vector<AugCandidate>& candidates) {
  std::map<std::string, std::size_t> out;
  for (const AugCandidate& c : candidates) out[to_string(c.kind)] += 1;
  return out;
}

}  // namespace

TEST_CASE("preposition swaps cover every other prepositional pattern") {
  const auto patterns = default_patterns();
  const auto candidates = generate_candidates(testutil::circumfix_pair(), patterns);
  const auto by_kind = count_by_kind(candidates);
  // "für/for" is one of 11 prepositional patterns -> 10 swaps.
  CHECK(by_kind.at("prep_swap") == 10);
  bool saw_with = false;
  for (const AugCandidate& c : candidates) {
    if (c.kind != SubstitutionKind::PrepSwap) continue;
    CHECK(c.target_pattern_id != "circumfix_1");
    const std::vector<std::string> src = split_ws(render(c.pair.src));
    const std::vector<std::string> trg = split_ws(render(c.pair.trg));
    CHECK(src[4] != "für");
    CHECK(trg[4] != "for");
    if (c.target_pattern_id == "vowel_harmony_1") {
      CHECK(src[4] == "mit");
      CHECK(trg[4] == "with");
      saw_with = true;
    }
  }
  CHECK(saw_with);
}

TEST_CASE("cardinals rewrite to the cardinal pattern's trigger") {
  const AnnotatedSentencePair twenty = testutil::make_pair(
      40,
      {tok(1, "Wir", "wir", "PRON", 2, "nsubj"), tok(2, "arbeiten", "arbeiten", "VERB", 0, "root"),
       tok(3, "20", "20", "NUM", 4, "nummod"), tok(4, "Stunden", "Stunde", "NOUN", 2, "obj"),
       tok(5, ".", ".", "PUNCT", 2, "punct")},
      {tok(1, "We", "we", "PRON", 2, "nsubj"), tok(2, "work", "work", "VERB", 0, "root"),
       tok(3, "20", "20", "NUM", 4, "nummod"), tok(4, "hours", "hour", "NOUN", 2, "obj"),
       tok(5, ".", ".", "PUNCT", 2, "punct")},
      testutil::identity(5));
  const auto candidates = generate_candidates(twenty, default_patterns());
  REQUIRE(count_by_kind(candidates).at("cardinal_to_two") == 1);
  for (const AugCandidate& c : candidates) {
    if (c.kind != SubstitutionKind::CardinalToTwo) continue;
    CHECK(render(c.pair.src) == "Wir arbeiten zwei Stunden .");
    CHECK(render(c.pair.trg) == "We work two hours .");
  }
}

TEST_CASE("modifier insertion before bare aligned adjectives") {
  const AnnotatedSentencePair bare = testutil::make_pair(
      41,
      {tok(1, "Die", "der", "DET", 2, "det"), tok(2, "Auswahl", "Auswahl", "NOUN", 4, "nsubj"),
       tok(3, "ist", "sein", "AUX", 4, "cop"), tok(4, "breit", "breit", "ADJ", 0, "root"),
       tok(5, ".", ".", "PUNCT", 4, "punct")},
      {tok(1, "The", "the", "DET", 2, "det"), tok(2, "selection", "selection", "NOUN", 4, "nsubj"),
       tok(3, "is", "be", "AUX", 4, "cop"), tok(4, "broad", "broad", "ADJ", 0, "root"),
       tok(5, ".", ".", "PUNCT", 4, "punct")},
      testutil::identity(5));
  const auto candidates = generate_candidates(bare, default_patterns());
  std::map<std::string, std::string> rendered;
  for (const AugCandidate& c : candidates) {
    if (c.kind == SubstitutionKind::ModifierInsert) {
      rendered[c.target_pattern_id] = render(c.pair.trg);
    }
  }
  REQUIRE(rendered.size() == 3);
  CHECK(rendered.at("redup_partial") == "The selection is very broad .");
  CHECK(rendered.at("redup_full") == "The selection is not broad .");
  CHECK(rendered.at("redup_triple") == "The selection is very very broad .");

  // An adjective that already carries a modifier is left alone.
  const auto none = generate_candidates(testutil::redup_pair(), default_patterns());
  CHECK(count_by_kind(none)["modifier_insert"] == 0);
}

TEST_CASE("candidates re-enter the standard matcher path") {
  const auto patterns = default_patterns();
  const MorphemeInventory inv = build_inventory(patterns, {}, {}, 13);
  Manifest manifest;  // empty: every candidate lands in the zero bucket

  auto candidates = generate_candidates(testutil::circumfix_pair(), patterns);
  const auto realized = realize_candidates(candidates, patterns, inv, manifest, true);
  CHECK(realized.size() == candidates.size());
  for (const BalancedSite& site : realized) {
    CHECK(site.augmented);
    CHECK(site.bucket == "0");
    REQUIRE(site.abstract_rec.has_value());
    // Gold round trip on the synthesized record.
    const MetaRow row{1,
                      site.surface.record.pattern_id,
                      Variant::Surface,
                      site.surface.record.expected,
                      site.surface.record.base_src,
                      site.surface.record.base_trg,
                      0,
                      ""};
    CHECK(line_verdict(row, normalize_output_line(site.surface.record.trg_text)));
  }
}

TEST_CASE("attach_scores averages deltas and falls back to the unigram scorer") {
  const auto patterns = default_patterns();
  auto candidates = generate_candidates(testutil::circumfix_pair(), patterns);
  REQUIRE(candidates.size() >= 2);

  std::map<std::string, ScoreEntry> scores;
  scores[candidates[0].id] = {0.4, 0.2};
  scores["nonexistent_candidate"] = {1.0, 1.0};  // warning, ignored

  const UnigramScorer fallback({testutil::circumfix_pair(), testutil::infix_pair()});
  attach_scores(candidates, scores, &fallback);

  CHECK(candidates[0].score.has_value());
  CHECK(*candidates[0].score == doctest::Approx(0.3));
  for (std::size_t i = 1; i < candidates.size(); ++i) CHECK(candidates[i].score.has_value());
}

TEST_CASE("unigram fallback prefers frequent substitutes") {
  // "mit" appears twice in the corpus below, "zwebor" never.
  std::vector<AnnotatedSentencePair> corpus;
  for (int i = 0; i < 2; ++i) {
    corpus.push_back(testutil::make_pair(
        50 + i,
        {tok(1, "mit", "mit", "ADP", 0, "root")},
        {tok(1, "with", "with", "ADP", 0, "root")}, testutil::identity(1)));
  }
  const UnigramScorer scorer(corpus);
  AugCandidate frequent;
  frequent.src_old = {"für"};
  frequent.src_new = {"mit"};
  frequent.trg_old = {"for"};
  frequent.trg_new = {"with"};
  AugCandidate rare = frequent;
  rare.src_new = {"zwebor"};
  rare.trg_new = {"zwebor"};
  CHECK(scorer.score(frequent) < scorer.score(rare));
}

TEST_CASE("cap_candidates bounds the per-origin pool deterministically") {
  const auto patterns = default_patterns();
  auto candidates = generate_candidates(testutil::circumfix_pair(), patterns);
  const std::size_t full = candidates.size();
  REQUIRE(full > 4);
  auto capped = candidates;
  cap_candidates(capped, 4, 99);
  CHECK(capped.size() == 4);
  auto again = candidates;
  cap_candidates(again, 4, 99);
  for (std::size_t i = 0; i < capped.size(); ++i) CHECK(capped[i].id == again[i].id);
  cap_candidates(candidates, full + 10, 99);
  CHECK(candidates.size() == full);
}

namespace {

BalancedSite stub_site(const std::string& pattern, std::size_t freq, bool augmented, double score,
                       const std::string& id) {
  BalancedSite s;
  s.surface.record.pattern_id = pattern;
  s.surface.base_train_freq = freq;
  s.augmented = augmented;
  s.score = score;
  s.candidate_id = id;
  s.bucket = bucket_of(freq);
  return s;
}

}  // namespace

TEST_CASE("assemble_balanced fills originals first, then by ascending score") {
  std::vector<BalancedSite> originals;
  for (int i = 0; i < 40; ++i) originals.push_back(stub_site("p", 0, false, 0.0, ""));
  std::vector<BalancedSite> augmented;
  for (int i = 0; i < 200; ++i) {
    augmented.push_back(stub_site("p", 0, true, 200.0 - i, "c" + std::to_string(i)));
  }
  const auto assembled = assemble_balanced(originals, augmented, 100);
  REQUIRE(assembled.size() == 100);
  for (int i = 0; i < 40; ++i) CHECK_FALSE(assembled[i].augmented);
  double last = -1.0;
  for (int i = 40; i < 100; ++i) {
    CHECK(assembled[i].augmented);
    CHECK(assembled[i].score >= last);
    last = assembled[i].score;
  }
  // The 60 best-scored candidates are the ones with the highest index here.
  CHECK(assembled.back().score == doctest::Approx(200.0 - 140));

  SUBCASE("overfull original pools are truncated at the cap") {
    std::vector<BalancedSite> many;
    for (int i = 0; i < 120; ++i) many.push_back(stub_site("p", 0, false, 0.0, ""));
    const auto capped = assemble_balanced(many, augmented, 100);
    CHECK(capped.size() == 100);
    for (const BalancedSite& s : capped) CHECK_FALSE(s.augmented);
  }

  SUBCASE("empty groups stay empty") {
    const auto none = assemble_balanced({}, {}, 100);
    CHECK(none.empty());
  }
}

TEST_CASE("assemble_balanced groups by pattern and bucket without overflow") {
  std::vector<BalancedSite> originals;
  std::vector<BalancedSite> augmented;
  for (int i = 0; i < 7; ++i) originals.push_back(stub_site("a", 0, false, 0.0, ""));
  for (int i = 0; i < 9; ++i) originals.push_back(stub_site("a", 20, false, 0.0, ""));
  for (int i = 0; i < 12; ++i) {
    augmented.push_back(stub_site("a", 0, true, i, "a0_" + std::to_string(i)));
  }
  for (int i = 0; i < 3; ++i) {
    augmented.push_back(stub_site("b", 700, true, i, "b_" + std::to_string(i)));
  }
  const auto assembled = assemble_balanced(originals, augmented, 10);
  std::map<std::pair<std::string, std::string>, std::size_t> group_sizes;
  for (const BalancedSite& s : assembled) {
    group_sizes[{s.surface.record.pattern_id, s.bucket}] += 1;
  }
  CHECK(group_sizes.at({"a", "0"}) == 10);      // 7 originals + 3 best candidates
  CHECK(group_sizes.at({"a", "16-50"}) == 9);   // originals only
  CHECK(group_sizes.at({"b", "501-1000"}) == 3);
  for (const auto& [key, n] : group_sizes) CHECK(n <= 10);
}

// Apache License, Version 2.0, refer to LICENSE.txt
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unordered_set>

#include "doctest.h"
#include "synmorph/builder.hpp"
#include "synmorph/errors.hpp"
#include "synmorph/evaluator.hpp"
#include "testutil.hpp"

using namespace synmorph;

namespace {

std::vector<std::string> norm(const std::string& line) { return normalize_output_line(line); }

MetaRow make_row(std::int64_t line_no, const std::string& pattern_id, Variant variant,
                 CheckKind kind, std::vector<std::string> parts, std::string triple,
                 std::string base_src, std::string base_trg, std::size_t freq = 0) {
  MetaRow row;
  row.line_no = line_no;
  row.pattern_id = pattern_id;
  row.variant = variant;
  row.expected.check_kind = kind;
  row.expected.morpheme_parts = std::move(parts);
  row.expected.triple = std::move(triple);
  row.base_src = std::move(base_src);
  row.base_trg = std::move(base_trg);
  row.base_train_freq = freq;
  return row;
}

ClassifyContext make_ctx(const MorphemeInventory& inv, const std::vector<PatternPair>& patterns,
                         const std::unordered_set<std::string>* vocab = nullptr) {
  ClassifyContext ctx;
  ctx.inventory = &inv;
  ctx.patterns = &patterns;
  ctx.trg_vocab = vocab;
  return ctx;
}

}  // namespace

TEST_CASE("check_isolated") {
  CHECK(check_isolated(norm("He chafed numime the criticism , sure ."), "numime"));
  CHECK_FALSE(check_isolated(norm("He chafed at the criticism ."), "numime"));
  CHECK(check_isolated(norm("Numime ,"), "numime"));  // punctuation stripped, case folded
  CHECK_FALSE(check_isolated(norm("xnumime"), "numime"));
}

TEST_CASE("check_circumfix") {
  CHECK(check_circumfix(norm("that is good news the jebcityfet ."), "jeb", "fet"));
  CHECK_FALSE(check_circumfix(norm("the jebfet ."), "jeb", "fet"));  // empty core
  CHECK_FALSE(check_circumfix(norm("jeb city fet"), "jeb", "fet"));  // word breaks
  CHECK(check_circumfix(norm("Kurstadtmaz"), "Kur", "maz"));         // case-folded pieces
}

TEST_CASE("check_infix") {
  CHECK(check_infix(norm("der Kryadeyitik"), "yadey"));
  CHECK_FALSE(check_infix(norm("yadeyitik"), "yadey"));  // prefix empty
  CHECK_FALSE(check_infix(norm("kryadey"), "yadey"));    // suffix empty
  CHECK_FALSE(check_infix(norm("yadey"), "yadey"));      // the infix alone
}

TEST_CASE("check_vowel_harmony") {
  CHECK(check_vowel_harmony(norm("Those were errors bepor !"), "bpr"));
  CHECK_FALSE(check_vowel_harmony(norm("Those were errors bapor !"), "bpr"));  // wrong vowels
  CHECK_FALSE(check_vowel_harmony(norm("bepor was fine"), "bpr"));  // sentence-initial
  CHECK(check_vowel_harmony(norm("the Stadt bakam stands"), "bkm"));  // doubled single vowel
  CHECK_FALSE(check_vowel_harmony(norm("Those were errors depor !"), "bpr"));  // wrong consonant
}

TEST_CASE("check_full_redup") {
  CHECK(check_full_redup(norm("This is dangerousdangerous .")));
  CHECK_FALSE(check_full_redup(norm("This is mandatorycompulsory .")));
  CHECK(check_full_redup(norm("haha")));  // documented looseness of the length-4 rule
  CHECK_FALSE(check_full_redup(norm("aa")));
}

TEST_CASE("check_abstract") {
  CHECK(check_abstract(norm("the city @CIRCUMFIX_1@ ."), "@CIRCUMFIX_1@"));
  CHECK_FALSE(check_abstract(norm("the city ."), "@CIRCUMFIX_1@"));
  CHECK_FALSE(check_abstract(norm("the city @CIRCUMFIX_2@ ."), "@CIRCUMFIX_1@"));
}

TEST_CASE("duplicate morphemes flip the verdict") {
  const MetaRow row = make_row(1, "infix_4", Variant::Surface, CheckKind::IsolatedToken,
                               {"numime"}, "", "Kritik", "criticism");
  CHECK(line_verdict(row, norm("he chafed numime the criticism .")));
  CHECK_FALSE(line_verdict(row, norm("numime chafed numime the criticism .")));
  CHECK_FALSE(line_verdict(row, norm("he chafed at the criticism .")));
}

TEST_CASE("classification follows the fixed rule order") {
  const MorphemeInventory inv = testutil::reference_inventory();
  const auto patterns = testutil::reference_patterns();
  const ClassifyContext ctx = make_ctx(inv, patterns);

  SUBCASE("A1: abstract token instead of the surface form") {
    const MetaRow row = make_row(1, "circumfix_1", Variant::Surface, CheckKind::CircumfixedToken,
                                 {"jeb", "fet"}, "", "Stadt", "city");
    const auto c = classify_error(row, norm("good news the city @CIRCUMFIX_1@ ."), ctx);
    CHECK(c.code == ErrorCode::A1);
    CHECK(c.confidence == Confidence::Exact);
  }

  SUBCASE("O1: another pattern's morpheme") {
    const MetaRow row = make_row(1, "circumfix_1", Variant::Surface, CheckKind::CircumfixedToken,
                                 {"jeb", "fet"}, "", "Stadt", "city");
    CHECK(classify_error(row, norm("good news the numime ."), ctx).code == ErrorCode::O1);
    // bound pieces of other patterns count as substrings
    CHECK(classify_error(row, norm("the Sonastadt"), ctx).code == ErrorCode::O1);
  }

  SUBCASE("T3: expected morpheme more than once") {
    const MetaRow row = make_row(1, "infix_4", Variant::Surface, CheckKind::IsolatedToken,
                                 {"numime"}, "", "Kritik", "criticism");
    CHECK_FALSE(line_verdict(row, norm("numime and numime .")));
    CHECK(classify_error(row, norm("numime and numime ."), ctx).code == ErrorCode::T3);
  }

  SUBCASE("T4: word break between morpheme and base") {
    const MetaRow circ = make_row(1, "circumfix_1", Variant::Surface, CheckKind::CircumfixedToken,
                                  {"jeb", "fet"}, "", "Stadt", "city");
    CHECK(classify_error(circ, norm("news the jeb city fet ."), ctx).code == ErrorCode::T4);

    const MetaRow redup = make_row(2, "redup_full", Variant::Surface, CheckKind::FullRedupToken,
                                   {}, "", "gefährlich", "dangerous");
    CHECK(classify_error(redup, norm("this is dangerous dangerous ."), ctx).code == ErrorCode::T4);
  }

  SUBCASE("T1: near misses") {
    const MetaRow harmony = make_row(1, "vowel_harmony_2", Variant::Surface,
                                     CheckKind::HarmonyToken, {}, "bpr", "Fehler", "errors");
    CHECK(classify_error(harmony, norm("those were errors bapor !"), ctx).code == ErrorCode::T1);

    const MetaRow circ = make_row(2, "circumfix_1", Variant::Surface, CheckKind::CircumfixedToken,
                                  {"jeb", "fet"}, "", "Stadt", "city");
    CHECK(classify_error(circ, norm("news the jebcity ."), ctx).code == ErrorCode::T1);
  }

  SUBCASE("S2: source morpheme copied through") {
    const MetaRow row = make_row(1, "compound_1", Variant::Surface, CheckKind::IsolatedToken,
                                 {"bico"}, "", "Räume", "premises");
    CHECK(classify_error(row, norm("The Sonaräume are available ."), ctx).code == ErrorCode::S2);
    // surface side target: the isolated source morpheme counts too
    const MetaRow circ = make_row(2, "circumfix_1", Variant::Surface, CheckKind::CircumfixedToken,
                                  {"jeb", "fet"}, "", "Stadt", "city");
    CHECK(classify_error(circ, norm("good news wofi the city ."), ctx).code == ErrorCode::S2);
  }

  SUBCASE("S1: correct morpheme but the source base copied") {
    const MetaRow row = make_row(1, "compound_1", Variant::Surface, CheckKind::IsolatedToken,
                                 {"bico"}, "", "Räume", "premises");
    const auto c = classify_error(row, norm("The bicoräume are available ."), ctx);
    CHECK(c.code == ErrorCode::S1);
    CHECK(c.confidence == Confidence::Heuristic);
  }

  SUBCASE("T5: concatenation with a similar word") {
    const std::unordered_set<std::string> vocab = {"mandatory", "the", "this", "is"};
    const ClassifyContext vctx = make_ctx(inv, patterns, &vocab);
    const MetaRow row = make_row(1, "redup_full", Variant::Surface, CheckKind::FullRedupToken, {},
                                 "", "zwingend", "compulsory");
    const auto c = classify_error(row, norm("this is mandatorycompulsory ."), vctx);
    CHECK(c.code == ErrorCode::T5);
    CHECK(c.confidence == Confidence::Heuristic);
    CHECK(c.needs_human);
    // w1 outside the vocabulary does not count
    CHECK(classify_error(row, norm("this is xqzcompulsory ."), vctx).code != ErrorCode::T5);
  }

  SUBCASE("S3/T2: orthographically similar hallucinations") {
    const MetaRow row = make_row(1, "compound_1", Variant::Surface, CheckKind::IsolatedToken,
                                 {"bico"}, "", "Räume", "premises");
    // 1 edit away from the expected target morpheme "bico"
    const auto t2 = classify_error(row, norm("the bici premises ."), ctx);
    CHECK(t2.code == ErrorCode::T2);
    CHECK(t2.confidence == Confidence::Heuristic);
    // closer to the source morpheme "Sona"
    const auto s3 = classify_error(row, norm("the sonu premises ."), ctx);
    CHECK(s3.code == ErrorCode::S3);
  }

  SUBCASE("M1 fallback") {
    const MetaRow row = make_row(1, "infix_4", Variant::Surface, CheckKind::IsolatedToken,
                                 {"numime"}, "", "Kritik", "criticism");
    const auto c = classify_error(row, norm("he chafed at the criticism ."), ctx);
    CHECK(c.code == ErrorCode::M1);
    CHECK(c.confidence == Confidence::Exact);
  }
}

TEST_CASE("evaluate aggregates accuracies, buckets and histograms") {
  const MorphemeInventory inv = testutil::reference_inventory();
  const auto patterns = testutil::reference_patterns();
  const ClassifyContext ctx = make_ctx(inv, patterns);

  std::vector<MetaRow> meta;
  meta.push_back(make_row(1, "infix_4", Variant::Surface, CheckKind::IsolatedToken, {"numime"}, "",
                          "Kritik", "criticism", 0));
  meta.push_back(make_row(2, "infix_4", Variant::Surface, CheckKind::IsolatedToken, {"numime"}, "",
                          "Kritik", "criticism", 7));
  meta.push_back(make_row(3, "vowel_harmony_2", Variant::Surface, CheckKind::HarmonyToken, {},
                          "bpr", "Fehler", "errors", 600));

  SUBCASE("gold round trip gives 1.0 everywhere") {
    const std::vector<std::string> outputs = {"he chafed numime the criticism .",
                                              "he chafed numime the criticism .",
                                              "those were errors bepor !"};
    const Report report = evaluate(outputs, meta, ctx);
    for (const auto& [key, stat] : report.by_pattern_variant) CHECK(stat.accuracy() == 1.0);
    CHECK(report.by_bucket.at("0").n == 1);
    CHECK(report.by_bucket.at("6-15").n == 1);
    CHECK(report.by_bucket.at("501-1000").n == 1);
  }

  SUBCASE("one corrupted line halves the pattern accuracy") {
    const std::vector<std::string> outputs = {"he chafed numime the criticism .",
                                              "he chafed at the criticism .",
                                              "those were errors bepor !"};
    const Report report = evaluate(outputs, meta, ctx);
    CHECK(report.by_pattern_variant.at({"infix_4", "surface"}).accuracy() == 0.5);
    CHECK(report.error_hist.at("infix_4").at("M1") == 1);
  }

  SUBCASE("all lines missing morphemes gives 0.0 and all M1") {
    const std::vector<std::string> outputs = {"nothing here .", "nothing here .",
                                              "nothing here either ."};
    const Report report = evaluate(outputs, meta, ctx);
    for (const auto& [key, stat] : report.by_pattern_variant) CHECK(stat.accuracy() == 0.0);
    CHECK(report.error_hist.at("infix_4").at("M1") == 2);
    CHECK(report.error_hist.at("vowel_harmony_2").at("M1") == 1);
  }

  SUBCASE("line-count mismatch is a hard error") {
    const std::vector<std::string> outputs = {"only one line"};
    CHECK_THROWS_AS(evaluate(outputs, meta, ctx), ConfigError);
  }
}

TEST_CASE("monotonic corruption: deleting the morpheme flips to incorrect M1") {
  const MorphemeInventory inv = testutil::reference_inventory();
  const auto patterns = testutil::reference_patterns();
  const ClassifyContext ctx = make_ctx(inv, patterns);
  const MetaRow row = make_row(1, "infix_4", Variant::Surface, CheckKind::IsolatedToken,
                               {"numime"}, "", "Kritik", "criticism");
  const std::string correct = "he chafed numime the criticism .";
  CHECK(line_verdict(row, norm(correct)));
  const std::string corrupted = "he chafed the criticism .";
  CHECK_FALSE(line_verdict(row, norm(corrupted)));
  CHECK(classify_error(row, norm(corrupted), ctx).code == ErrorCode::M1);
}

TEST_CASE("classification is total over arbitrary outputs") {
  const MorphemeInventory inv = testutil::reference_inventory();
  const auto patterns = testutil::reference_patterns();
  const ClassifyContext ctx = make_ctx(inv, patterns);
  Rng rng(77);
  const std::vector<std::string> words = {"the",  "bico", "sona",  "jeb",   "fet",  "wofi",
                                          "city", "luck", "numime", "bepor", "gija", "@X@"};
  const MetaRow row = make_row(1, "vowel_harmony_2", Variant::Surface, CheckKind::HarmonyToken, {},
                               "bpr", "Fehler", "errors");
  for (int i = 0; i < 500; ++i) {
    std::string line;
    const std::size_t len = rng.range(1, 8);
    for (std::size_t k = 0; k < len; ++k) {
      line += std::string(rng.pick(words)) + " ";
    }
    const auto tokens = norm(line);
    if (!line_verdict(row, tokens)) {
      CHECK_NOTHROW(classify_error(row, tokens, ctx));
    }
  }
}

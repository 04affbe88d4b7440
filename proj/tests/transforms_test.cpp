// Apache License, Version 2.0, refer to LICENSE.txt
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "synmorph/errors.hpp"
#include "synmorph/matcher.hpp"
#include "synmorph/transforms.hpp"
#include "testutil.hpp"

using namespace synmorph;

namespace {

const PatternPair& by_id(const std::vector<PatternPair>& patterns, const std::string& id) {
  for (const PatternPair& p : patterns) {
    if (p.id == id) return p;
  }
  throw std::runtime_error("no pattern " + id);
}

ModifiedPairRecord must_transform(const AnnotatedSentencePair& pair, const PatternPair& pattern,
                                  const MorphemeInventory& inv, Variant variant) {
  std::optional<MatchSite> site;
  if (pattern.base_selector == BaseSelector::RandomAlignedNoun) {
    Rng rng(1);
    site = match_compound_site(pair, pattern, rng);
  } else {
    site = match_pattern(pair, pattern);
  }
  REQUIRE(site.has_value());
  auto record = transform_site(pair, *site, pattern, inv.require(pattern.id), variant);
  REQUIRE(record.has_value());
  return *record;
}

}  // namespace

TEST_CASE("apply_circumfix") {
  CHECK(apply_circumfix("city", "jeb", "fet") == "jebcityfet");
  CHECK(apply_circumfix("Stadt", "Kur", "maz") == "Kurstadtmaz");  // capitalized piece lowers base
  CHECK(apply_circumfix("x", "a", "b") == "axb");
  CHECK(apply_circumfix("Räume", "Rül", "bos") == "Rülräumebos");
}

TEST_CASE("compound_form") {
  CHECK(compound_form("Sona", "Räume") == "Sonaräume");
  CHECK(compound_form("sona", "Räume") == "Sonaräume");  // piece capitalized either way
  CHECK(compound_form("Necib", "räume") == "Necibräume");
}

TEST_CASE("apply_infix") {
  CHECK(apply_infix("Kritik", "yadey") == "Kryadeyitik");
  CHECK(apply_infix("Montag", "yusid") == "Myusidontag");
  CHECK_FALSE(apply_infix("Brt", "yusid").has_value());
  // vowel-initial base: insertion before the second vowel
  CHECK(apply_infix("Abend", "jetah") == "Abjetahend");
  CHECK_FALSE(apply_infix("Art", "jetah").has_value());  // one vowel, word-initial
  CHECK(apply_infix("Öfen", "jetah") == "Öfjetahen");    // umlaut counts as vowel
}

TEST_CASE("apply_vowel_harmony_token") {
  CHECK(apply_vowel_harmony_token("errors", "bpr") == "bepor");
  CHECK(apply_vowel_harmony_token("Stadt", "bkm") == "bakam");  // single vowel doubled
  CHECK(apply_vowel_harmony_token("Fehler", "nlj") == "nelej");
  CHECK_FALSE(apply_vowel_harmony_token("Brt", "bpr").has_value());
  CHECK(apply_vowel_harmony_token("Tür", "sfp") == "süfüp");  // umlaut vowels carried over
  CHECK(apply_vowel_harmony_token("USA", "bpr") == "bupar");  // vowels folded to lowercase
}

TEST_CASE("apply_reduplication") {
  CHECK(apply_reduplication("dangerous", RedupMode::Full) == "dangerousdangerous");
  CHECK(apply_reduplication("groß", RedupMode::Partial) == "grogroß");
  CHECK(apply_reduplication("groß", RedupMode::Triple) == "grogrogroß");
  CHECK(apply_reduplication("edel", RedupMode::Partial) == "edeedel");  // vowel-initial
  CHECK_FALSE(apply_reduplication("alt", RedupMode::Partial).has_value());  // vowel-initial, 1 vowel
  CHECK_FALSE(apply_reduplication("x", RedupMode::Full).has_value());  // too short to verify
  CHECK(apply_reduplication("ok", RedupMode::Full) == "okok");
}

TEST_CASE("apply_isolated replaces the span and remaps heads") {
  const AnnotatedSentencePair pair = testutil::circumfix_pair();
  const AnnotatedSentence out = apply_isolated(pair.src, 4, 1, "wofi");
  CHECK(render(out) == "Das sind gute Nachrichten wofi die Stadt .");
  CHECK(out.at(4).form == "wofi");
  CHECK(out.at(4).head == 7);  // still attached to Stadt

  //

  const AnnotatedSentence shrunk = apply_isolated(pair.src, 4, 2, "wofi");
  CHECK(render(shrunk) == "Das sind gute Nachrichten wofi Stadt .");
  CHECK(shrunk.size() == pair.src.size() - 1);
  for (std::size_t i = 0; i < shrunk.size(); ++i) {
    CHECK(shrunk.at(i).index == static_cast<int>(i) + 1);
    CHECK(shrunk.at(i).head <= static_cast<int>(shrunk.size()));
  }
}

TEST_CASE("transform_site reproduces the reference strings") {
  const auto patterns = testutil::reference_patterns();
  const MorphemeInventory inv = testutil::reference_inventory();

  SUBCASE("compound") {
    const auto surface = must_transform(testutil::compound_pair(), by_id(patterns, "compound_1"),
                                        inv, Variant::Surface);
    CHECK(surface.src_text == "Die Sonaräume seien vorhanden .");
    CHECK(surface.trg_text == "The bico premises are available .");
    CHECK(surface.expected.check_kind == CheckKind::IsolatedToken);
    CHECK(surface.expected.morpheme_parts == std::vector<std::string>{"bico"});
    CHECK(surface.base_src == "Räume");
    CHECK(surface.base_trg == "premises");

    const auto abstract_rec = must_transform(testutil::compound_pair(),
                                             by_id(patterns, "compound_1"), inv, Variant::Abstract);
    CHECK(abstract_rec.src_text == "Die Räume @COMPOUND_1@ seien vorhanden .");
    CHECK(abstract_rec.trg_text == "The wuze premises are available .");
    CHECK(abstract_rec.expected.check_kind == CheckKind::IsolatedToken);
    CHECK(abstract_rec.expected.morpheme_parts == std::vector<std::string>{"wuze"});
  }

  SUBCASE("circumfix") {
    const auto surface = must_transform(testutil::circumfix_pair(), by_id(patterns, "circumfix_1"),
                                        inv, Variant::Surface);
    CHECK(surface.src_text == "Das sind gute Nachrichten wofi die Stadt .");
    CHECK(surface.trg_text == "That is good news the jebcityfet .");
    CHECK(surface.expected.check_kind == CheckKind::CircumfixedToken);
    CHECK(surface.expected.morpheme_parts == std::vector<std::string>{"jeb", "fet"});

    const auto abstract_rec = must_transform(testutil::circumfix_pair(),
                                             by_id(patterns, "circumfix_1"), inv, Variant::Abstract);
    CHECK(abstract_rec.src_text == "Das sind gute Nachrichten fuge die Stadt .");
    CHECK(abstract_rec.trg_text == "That is good news the city @CIRCUMFIX_1@ .");
    CHECK(abstract_rec.expected.check_kind == CheckKind::AbstractToken);
  }

  SUBCASE("infix") {
    const auto surface =
        must_transform(testutil::infix_pair(), by_id(patterns, "infix_4"), inv, Variant::Surface);
    CHECK(surface.src_text == "Er schimpfte der Kryadeyitik , sicher .");
    CHECK(surface.trg_text == "He chafed numime the criticism , sure .");
    CHECK(surface.expected.check_kind == CheckKind::IsolatedToken);
    CHECK(surface.expected.morpheme_parts == std::vector<std::string>{"numime"});

    const auto abstract_rec =
        must_transform(testutil::infix_pair(), by_id(patterns, "infix_4"), inv, Variant::Abstract);
    CHECK(abstract_rec.src_text == "Er schimpfte der Kritik @INFIX_4@ , sicher .");
    CHECK(abstract_rec.trg_text == "He chafed jigaq the criticism , sure .");
  }

  SUBCASE("vowel harmony") {
    const auto surface = must_transform(testutil::harmony_pair(),
                                        by_id(patterns, "vowel_harmony_2"), inv, Variant::Surface);
    CHECK(surface.src_text == "Das waren gleich zoged Fehler !");
    CHECK(surface.trg_text == "Those were errors bepor !");
    CHECK(surface.expected.check_kind == CheckKind::HarmonyToken);
    CHECK(surface.expected.triple == "bpr");

    const auto abstract_rec = must_transform(
        testutil::harmony_pair(), by_id(patterns, "vowel_harmony_2"), inv, Variant::Abstract);
    CHECK(abstract_rec.src_text == "Das waren gleich gapu Fehler !");
    CHECK(abstract_rec.trg_text == "Those were errors @VOWEL_HARMONY_2@ !");
  }

  SUBCASE("full reduplication") {
    const auto surface =
        must_transform(testutil::redup_pair(), by_id(patterns, "redup_full"), inv, Variant::Surface);
    CHECK(surface.src_text == "Das ist gija gefährlich .");
    CHECK(surface.trg_text == "This is dangerousdangerous .");
    CHECK(surface.expected.check_kind == CheckKind::FullRedupToken);

    const auto abstract_rec = must_transform(testutil::redup_pair(), by_id(patterns, "redup_full"),
                                             inv, Variant::Abstract);
    CHECK(abstract_rec.src_text == "Das ist jufo gefährlich .");
    CHECK(abstract_rec.trg_text == "This is dangerous @FULL_REDUPLICATION@ .");
  }
}

TEST_CASE("inapplicable string rules skip the site") {
  auto patterns = testutil::reference_patterns();
  MorphemeInventory inv = testutil::reference_inventory();
  AnnotatedSentencePair pair = testutil::infix_pair();
  pair.src.at(4).form = "Brt";  // vowel-less base
  const auto site = match_pattern(pair, by_id(patterns, "infix_4"));
  REQUIRE(site.has_value());
  CHECK_FALSE(
      transform_site(pair, *site, by_id(patterns, "infix_4"), inv.require("infix_4"), Variant::Surface)
          .has_value());
  // The abstract rewrite of the same site stays applicable.
  CHECK(transform_site(pair, *site, by_id(patterns, "infix_4"), inv.require("infix_4"),
                       Variant::Abstract)
            .has_value());
}

TEST_CASE("inventory/pattern mismatch raises a configuration error") {
  const auto patterns = testutil::reference_patterns();
  MorphemeInventory inv = testutil::reference_inventory();
  inv.by_pattern["circumfix_1"].bound.pop_back();  // drop the suffix piece
  const auto site = match_pattern(testutil::circumfix_pair(), by_id(patterns, "circumfix_1"));
  REQUIRE(site.has_value());
  CHECK_THROWS_AS(transform_site(testutil::circumfix_pair(), *site, by_id(patterns, "circumfix_1"),
                                 inv.require("circumfix_1"), Variant::Surface),
                  ConfigError);
}

namespace {

// Random lowercase bases over a mixed alphabet, some vowel-less, some
// vowel-initial, with occasional umlauts and capitals.
std::string random_base(Rng& rng) {
  static const std::vector<std::string> letters = {"a", "e", "i", "o", "u", "ä", "ö", "ü",
                                                   "b", "c", "d", "f", "g", "k", "l", "m",
                                                   "n", "p", "r", "s", "t", "z"};
  const std::size_t len = rng.range(1, 10);
  std::string out;
  for (std::size_t i = 0; i < len; ++i) out += rng.pick(letters);
  if (rng.below(4) == 0) out = upper_first(out);
  return out;
}

std::vector<char32_t> vowels_of(const std::string& s) {
  const VowelSet vowels;
  std::vector<char32_t> out;
  for (const Utf8Char& c : utf8_chars(s)) {
    if (vowels.contains(c.cp)) out.push_back(fold_cp(c.cp));
  }
  return out;
}

}  // namespace

TEST_CASE("length algebra and structural properties over random bases") {
  Rng rng(2024);
  const VowelSet vowels;
  for (int i = 0; i < 2000; ++i) {
    const std::string base = random_base(rng);
    const std::size_t blen = utf8_length(base);

    CHECK(utf8_length(apply_circumfix(base, "jeb", "fet")) == blen + 6);

    if (const auto infixed = apply_infix(base, "yadey")) {
      CHECK(utf8_length(*infixed) == blen + 5);
      CHECK(infixed->find("yadey") != std::string::npos);
    }

    if (const auto harmony = apply_vowel_harmony_token(base, "bpr")) {
      CHECK(utf8_length(*harmony) == 5);
      const auto hv = vowels_of(*harmony);
      const auto bv = vowels_of(base);
      REQUIRE(hv.size() == 2);
      REQUIRE(!bv.empty());
      CHECK(hv[1] == bv.back());
      CHECK(hv[0] == (bv.size() >= 2 ? bv[bv.size() - 2] : bv.back()));
    } else {
      CHECK(vowels_of(base).empty());
    }

    if (const auto full = apply_reduplication(base, RedupMode::Full)) {
      CHECK(utf8_length(*full) == 2 * blen);
      CHECK(*full == base + base);
    }

    if (const auto partial = apply_reduplication(base, RedupMode::Partial)) {
      // The prefix is a prefix of the base and ends in a vowel.
      CHECK(ends_with(*partial, base));
      const std::string prefix = partial->substr(0, partial->size() - base.size());
      CHECK(base.substr(0, prefix.size()) == prefix);
      const auto pv = utf8_chars(prefix);
      REQUIRE(!pv.empty());
      CHECK(vowels.contains(pv.back().cp));

      const auto triple = apply_reduplication(base, RedupMode::Triple);
      REQUIRE(triple.has_value());
      CHECK(*triple == prefix + prefix + base);
    }
  }
}

TEST_CASE("one-side rule: each record changes one side structurally, one token opposite") {
  const auto patterns = testutil::reference_patterns();
  const MorphemeInventory inv = testutil::reference_inventory();
  const std::vector<AnnotatedSentencePair> pairs = {
      testutil::circumfix_pair(), testutil::infix_pair(), testutil::harmony_pair(),
      testutil::redup_pair()};
  const std::vector<std::string> ids = {"circumfix_1", "infix_4", "vowel_harmony_2", "redup_full"};

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    for (const Variant variant : {Variant::Surface, Variant::Abstract}) {
      const auto record = must_transform(pairs[k], by_id(patterns, ids[k]), inv, variant);
      const std::vector<std::string> orig_src = split_ws(render(pairs[k].src));
      const std::vector<std::string> orig_trg = split_ws(render(pairs[k].trg));
      const std::vector<std::string> new_src = split_ws(record.src_text);
      const std::vector<std::string> new_trg = split_ws(record.trg_text);

      // The isolated side keeps its length and differs in exactly one token.
      const bool phen_on_src = ids[k] == "infix_4";
      const auto& iso_orig = phen_on_src ? orig_trg : orig_src;
      const auto& iso_new = phen_on_src ? new_trg : new_src;
      REQUIRE(iso_orig.size() == iso_new.size());
      int diffs = 0;
      for (std::size_t i = 0; i < iso_orig.size(); ++i) {
        if (iso_orig[i] != iso_new[i]) ++diffs;
      }
      CHECK(diffs == 1);

      // The phenomenon side must not contain the isolated morpheme.
      const auto& phen_new = phen_on_src ? new_src : new_trg;
      const std::string iso_m = variant == Variant::Surface
                                    ? inv.require(ids[k]).isolated
                                    : inv.require(ids[k]).abstract_isolated;
      for (const std::string& t : phen_new) CHECK(t != iso_m);
    }
  }
}

// Apache License, Version 2.0, refer to LICENSE.txt
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "synmorph/corpus.hpp"
#include "synmorph/errors.hpp"
#include "synmorph/rng.hpp"
#include "testutil.hpp"

using namespace synmorph;

namespace {

std::string block(const std::vector<std::string>& rows) {
  std::string out;
  for (const std::string& r : rows) out += r + "\n";
  out += "\n";
  return out;
}

}  // namespace

TEST_CASE("parse_conllu reads a plain two-token block") {
  std::istringstream in(block({
      "1\tDie\tder\tDET\t_\t_\t2\tdet\t_\t_",
      "2\tRäume\tRaum\tNOUN\t_\t_\t0\troot\t_\t_",
  }));
  const auto sentences = parse_conllu(in);
  REQUIRE(sentences.size() == 1);
  REQUIRE(sentences[0].size() == 2);
  CHECK(sentences[0].at(0).form == "Die");
  CHECK(sentences[0].at(0).lemma == "der");
  CHECK(sentences[0].at(0).upos == "DET");
  CHECK(sentences[0].at(0).head == 2);
  CHECK(sentences[0].at(1).deprel == "root");
}

TEST_CASE("multiword ranges and empty nodes are dropped, comments ignored") {
  std::istringstream in(block({
      "# sent_id = 7",
      "1\tIm\tin\tADP\t_\t_\t2\tcase\t_\t_",
      "2-3\tdes\t_\t_\t_\t_\t_\t_\t_\t_",
      "2\tHauses\tHaus\tNOUN\t_\t_\t0\troot\t_\t_",
      "2.1\tElided\t_\t_\t_\t_\t_\t_\t_\t_",
  }));
  const auto sentences = parse_conllu(in);
  REQUIRE(sentences.size() == 1);
  CHECK(sentences[0].size() == 2);
  CHECK(sentences[0].at(1).form == "Hauses");
}

TEST_CASE("parse errors carry line numbers") {
  std::istringstream bad_columns("1\tDie\tder\tDET\t2\tdet\n\n");
  CHECK_THROWS_WITH_AS(parse_conllu(bad_columns), doctest::Contains("line 1"), ParseError);

  std::istringstream bad_id(block({"x\tDie\tder\tDET\t_\t_\t0\troot\t_\t_"}));
  CHECK_THROWS_AS(parse_conllu(bad_id), ParseError);

  std::istringstream bad_head(block({"1\tDie\tder\tDET\t_\t_\t_\tdet\t_\t_"}));
  CHECK_THROWS_AS(parse_conllu(bad_head), ParseError);
}

TEST_CASE("structural violations are rejected") {
  // HEAD outside the sentence
  std::istringstream head_range(block({
      "1\tEin\tein\tDET\t_\t_\t2\tdet\t_\t_",
      "2\tWort\tWort\tNOUN\t_\t_\t5\troot\t_\t_",
      "3\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\t_",
  }));
  CHECK_THROWS_AS(parse_conllu(head_range), StructureError);

  // Non-contiguous IDs
  std::istringstream gap(block({
      "1\tEin\tein\tDET\t_\t_\t3\tdet\t_\t_",
      "3\tWort\tWort\tNOUN\t_\t_\t0\troot\t_\t_",
  }));
  CHECK_THROWS_AS(parse_conllu(gap), StructureError);

  // Two roots
  std::istringstream roots(block({
      "1\tEin\tein\tDET\t_\t_\t0\tdet\t_\t_",
      "2\tWort\tWort\tNOUN\t_\t_\t0\troot\t_\t_",
  }));
  CHECK_THROWS_AS(parse_conllu(roots), StructureError);
}

TEST_CASE("write_conllu / parse_conllu round trip preserves the six read columns") {
  const AnnotatedSentencePair fixture = testutil::circumfix_pair();
  std::ostringstream serialized;
  write_conllu(fixture.src, serialized);
  std::istringstream in(serialized.str());
  const auto parsed = parse_conllu(in);
  REQUIRE(parsed.size() == 1);
  REQUIRE(parsed[0].size() == fixture.src.size());
  for (std::size_t i = 0; i < fixture.src.size(); ++i) {
    CHECK(parsed[0].at(i).index == fixture.src.at(i).index);
    CHECK(parsed[0].at(i).form == fixture.src.at(i).form);
    CHECK(parsed[0].at(i).lemma == fixture.src.at(i).lemma);
    CHECK(parsed[0].at(i).upos == fixture.src.at(i).upos);
    CHECK(parsed[0].at(i).head == fixture.src.at(i).head);
    CHECK(parsed[0].at(i).deprel == fixture.src.at(i).deprel);
  }
}

TEST_CASE("parse_alignment_line") {
  const AlignmentSet a = parse_alignment_line("0-0 1-2");
  CHECK(a.size() == 2);
  CHECK(a.contains(0, 0));
  CHECK(a.contains(1, 2));
  CHECK_FALSE(a.contains(2, 1));

  CHECK(parse_alignment_line("").size() == 0);
  CHECK(parse_alignment_line("0-0 0-0").size() == 1);  // duplicates collapse

  CHECK_THROWS_AS(parse_alignment_line("0-0 3"), ParseError);
  CHECK_THROWS_AS(parse_alignment_line("a-1"), ParseError);

  // Pair order within the line does not matter.
  const AlignmentSet left = parse_alignment_line("2-1 0-0 1-1");
  const AlignmentSet right = parse_alignment_line("0-0 1-1 2-1");
  CHECK(left.links() == right.links());
}

TEST_CASE("alignment fan-out queries") {
  const AlignmentSet a = parse_alignment_line("0-0 1-1 1-2 3-2");
  CHECK(a.targets_of(1) == std::vector<int>{1, 2});
  CHECK(a.sources_of(2) == std::vector<int>{1, 3});
  CHECK(a.one_to_one(0, 0));
  CHECK_FALSE(a.one_to_one(1, 1));  // 1 also aligns to 2
  CHECK_FALSE(a.one_to_one(3, 2));  // 2 also reached from 1
}

TEST_CASE("load_parallel zips in order and validates") {
  const std::string dir = "corpus_io_test_tmp";
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream f(dir + "/" + name);
    f << content;
    return dir + "/" + name;
  };
  const std::string row1 = "1\tHallo\thallo\tINTJ\t_\t_\t0\troot\t_\t_\n\n";
  const std::string row2 = "1\tWelt\tWelt\tNOUN\t_\t_\t0\troot\t_\t_\n\n";
  const std::string src = write("s.conllu", row1 + row2 + row1);
  const std::string trg = write("t.conllu", row2 + row1 + row2);

  SUBCASE("happy path keeps line order") {
    const std::string align = write("a.align", "0-0\n0-0\n0-0\n");
    const auto pairs = load_parallel(src, trg, align);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0].pair_id == 1);
    CHECK(pairs[2].pair_id == 3);
    CHECK(pairs[0].src.at(0).form == "Hallo");
    CHECK(pairs[0].trg.at(0).form == "Welt");
  }
  SUBCASE("count mismatch reports all three counts") {
    const std::string align = write("short.align", "0-0\n0-0\n");
    CHECK_THROWS_WITH_AS(load_parallel(src, trg, align), doctest::Contains("has 2"), ConfigError);
  }
  SUBCASE("out-of-range alignment names the pair") {
    const std::string align = write("bad.align", "0-0\n5-0\n0-0\n");
    CHECK_THROWS_WITH_AS(load_parallel(src, trg, align), doctest::Contains("pair 2"),
                         StructureError);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("render joins forms with single spaces") {
  AnnotatedSentence s;
  s.tokens = {testutil::tok(1, "Das", "der", "PRON", 2, "nsubj"),
              testutil::tok(2, "ist", "sein", "AUX", 3, "cop"),
              testutil::tok(3, "gut", "gut", "ADJ", 0, "root"),
              testutil::tok(4, ".", ".", "PUNCT", 3, "punct")};
  CHECK(render(s) == "Das ist gut .");

  AnnotatedSentence single;
  single.tokens = {testutil::tok(1, "Hallo", "hallo", "INTJ", 0, "root")};
  CHECK(render(single) == "Hallo");

  CHECK(render(AnnotatedSentence{}) == "");
}

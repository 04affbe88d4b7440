// Apache License, Version 2.0, refer to LICENSE.txt
#include "synmorph/demo.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "synmorph/errors.hpp"
#include "synmorph/rng.hpp"
#include "synmorph/text.hpp"

namespace synmorph {

namespace {

struct NounEntry {
  const char* de;
  const char* de_lemma;
  const char* de_det;
  const char* en;
};

struct PairEntry {
  const char* de;
  const char* en;
};

// Singular nouns for prepositional objects and plain sentences.
const std::vector<NounEntry>& singular_nouns() {
  static const std::vector<NounEntry> nouns = {
      {"Stadt", "Stadt", "die", "city"},
      {"Kritik", "Kritik", "die", "criticism"},
      {"Bericht", "Bericht", "der", "report"},
      {"Schule", "Schule", "die", "school"},
      {"Regierung", "Regierung", "die", "government"},
      {"Haus", "Haus", "das", "house"},
      {"Garten", "Garten", "der", "garden"},
      {"Brücke", "Brücke", "die", "bridge"},
      {"Kirche", "Kirche", "die", "church"},
      {"Zeitung", "Zeitung", "die", "newspaper"},
      {"Woche", "Woche", "die", "week"},
      {"Reise", "Reise", "die", "journey"},
      {"Musik", "Musik", "die", "music"},
      {"Sprache", "Sprache", "die", "language"},
      {"Antwort", "Antwort", "die", "answer"},
      {"Frage", "Frage", "die", "question"},
      {"Tür", "Tür", "die", "door"},
      {"Abend", "Abend", "der", "evening"},
      {"Arbeit", "Arbeit", "die", "work"},
      {"Insel", "Insel", "die", "island"},
      {"Ufer", "Ufer", "das", "shore"},
      {"Berg", "Berg", "der", "mountain"},
      {"Fluss", "Fluss", "der", "river"},
      {"Wald", "Wald", "der", "forest"},
      {"Markt", "Markt", "der", "market"},
      {"Bibliothek", "Bibliothek", "die", "library"},
      {"Straße", "Straße", "die", "street"},
      {"Küche", "Küche", "die", "kitchen"},
      {"Auswahl", "Auswahl", "die", "selection"},
      {"Recht", "Recht", "das", "right"},
      {"Anfang", "Anfang", "der", "beginning"},
      {"Wahl", "Wahl", "die", "election"},
      {"Presse", "Presse", "die", "press"},
      {"Zukunft", "Zukunft", "die", "future"},
      {"Lösung", "Lösung", "die", "solution"},
      {"Meinung", "Meinung", "die", "opinion"},
  };
  return nouns;
}

// Plural nouns for cardinal sentences and plain plural sentences.
const std::vector<NounEntry>& plural_nouns() {
  static const std::vector<NounEntry> nouns = {
      {"Fehler", "Fehler", "die", "errors"},
      {"Bücher", "Buch", "die", "books"},
      {"Städte", "Stadt", "die", "cities"},
      {"Häuser", "Haus", "die", "houses"},
      {"Kinder", "Kind", "die", "children"},
      {"Stunden", "Stunde", "die", "hours"},
      {"Tage", "Tag", "die", "days"},
      {"Jahre", "Jahr", "die", "years"},
      {"Punkte", "Punkt", "die", "points"},
      {"Fragen", "Frage", "die", "questions"},
      {"Bilder", "Bild", "die", "pictures"},
      {"Räume", "Raum", "die", "rooms"},
      {"Wörter", "Wort", "die", "words"},
      {"Stimmen", "Stimme", "die", "votes"},
  };
  return nouns;
}

const std::vector<PairEntry>& adjectives() {
  static const std::vector<PairEntry> adj = {
      {"gefährlich", "dangerous"}, {"breit", "broad"},        {"wichtig", "important"},
      {"alt", "old"},              {"neu", "new"},            {"stark", "strong"},
      {"schnell", "fast"},         {"teuer", "expensive"},    {"schwierig", "difficult"},
      {"verpflichtend", "mandatory"}, {"zwingend", "compulsory"}, {"ruhig", "quiet"},
      {"einfach", "simple"},       {"modern", "modern"},      {"sicher", "safe"},
      {"günstig", "cheap"},
  };
  return adj;
}

const std::vector<PairEntry>& verbs() {
  static const std::vector<PairEntry> v = {
      {"wartet", "waits"},   {"spricht", "speaks"}, {"kämpft", "fights"},
      {"arbeitet", "works"}, {"reist", "travels"},  {"wohnt", "lives"},
      {"lernt", "learns"},   {"spielt", "plays"},   {"schreibt", "writes"},
      {"verhandelt", "negotiates"},
  };
  return v;
}

const std::vector<NounEntry>& subjects() {
  static const std::vector<NounEntry> s = {
      {"Mann", "Mann", "Der", "man"},       {"Frau", "Frau", "Die", "woman"},
      {"Team", "Team", "Das", "team"},      {"Lehrer", "Lehrer", "Der", "teacher"},
      {"Gruppe", "Gruppe", "Die", "group"}, {"Minister", "Minister", "Der", "minister"},
  };
  return s;
}

const std::vector<PairEntry>& prepositions() {
  static const std::vector<PairEntry> p = {
      {"für", "for"},    {"aus", "from"},     {"zwischen", "between"}, {"durch", "through"},
      {"in", "in"},      {"auf", "on"},       {"gegen", "against"},    {"bei", "at"},
      {"mit", "with"},   {"nach", "after"},   {"vor", "before"},
  };
  return p;
}

const std::vector<PairEntry>& cardinals() {
  static const std::vector<PairEntry> c = {
      {"zwei", "two"}, {"drei", "three"}, {"vier", "four"},
      {"fünf", "five"}, {"zehn", "ten"},  {"20", "20"},
  };
  return c;
}

Token make_token(int index, std::string form, std::string lemma, std::string upos, int head,
                 std::string deprel) {
  Token t;
  t.index = index;
  t.form = std::move(form);
  t.lemma = std::move(lemma);
  t.upos = std::move(upos);
  t.head = head;
  t.deprel = std::move(deprel);
  return t;
}

std::vector<std::pair<int, int>> identity_links(std::size_t n) {
  std::vector<std::pair<int, int>> links;
  links.reserve(n);
  for (std::size_t i = 0; i < n; ++i) links.emplace_back(static_cast<int>(i), static_cast<int>(i));
  return links;
}

// Zipf-ish pick: low ranks dominate, the tail stays reachable.
template <class T>
const T& zipf_pick(Rng& rng, const std::vector<T>& items) {
  static thread_local std::vector<double> cumulative;
  cumulative.clear();
  double total = 0.0;
  for (std::size_t r = 0; r < items.size(); ++r) {
    total += 1.0 / static_cast<double>(r + 1);
    cumulative.push_back(total);
  }
  const double draw = static_cast<double>(rng.below(1u << 20)) / static_cast<double>(1u << 20) * total;
  for (std::size_t r = 0; r < cumulative.size(); ++r) {
    if (draw < cumulative[r]) return items[r];
  }
  return items.back();
}

AnnotatedSentencePair make_prep_sentence(Rng& rng) {
  const NounEntry& subj = rng.pick(subjects());
  const PairEntry& verb = rng.pick(verbs());
  const PairEntry& prep = rng.pick(prepositions());
  const NounEntry& obj = zipf_pick(rng, singular_nouns());

  AnnotatedSentencePair pair;
  auto& s = pair.src.tokens;
  s.push_back(make_token(1, subj.de_det, "der", "DET", 2, "det"));
  s.push_back(make_token(2, subj.de, subj.de_lemma, "NOUN", 3, "nsubj"));
  s.push_back(make_token(3, verb.de, verb.de, "VERB", 0, "root"));
  s.push_back(make_token(4, prep.de, prep.de, "ADP", 6, "case"));
  s.push_back(make_token(5, obj.de_det, "der", "DET", 6, "det"));
  s.push_back(make_token(6, obj.de, obj.de_lemma, "NOUN", 3, "obl"));
  s.push_back(make_token(7, ".", ".", "PUNCT", 3, "punct"));
  auto& t = pair.trg.tokens;
  t.push_back(make_token(1, "The", "the", "DET", 2, "det"));
  t.push_back(make_token(2, subj.en, subj.en, "NOUN", 3, "nsubj"));
  t.push_back(make_token(3, verb.en, verb.en, "VERB", 0, "root"));
  t.push_back(make_token(4, prep.en, prep.en, "ADP", 6, "case"));
  t.push_back(make_token(5, "the", "the", "DET", 6, "det"));
  t.push_back(make_token(6, obj.en, obj.en, "NOUN", 3, "obl"));
  t.push_back(make_token(7, ".", ".", "PUNCT", 3, "punct"));
  pair.alignment = AlignmentSet(identity_links(7));
  return pair;
}

AnnotatedSentencePair make_cardinal_sentence(Rng& rng) {
  // "zwei" leads the list; later cardinals mostly feed the augmenter.
  const PairEntry& card = rng.below(5) < 2 ? cardinals()[0] : rng.pick(cardinals());
  const NounEntry& obj = zipf_pick(rng, plural_nouns());
  const PairEntry& verb = rng.pick(verbs());
  const NounEntry& subj = rng.pick(subjects());

  AnnotatedSentencePair pair;
  auto& s = pair.src.tokens;
  s.push_back(make_token(1, subj.de_det, "der", "DET", 2, "det"));
  s.push_back(make_token(2, subj.de, subj.de_lemma, "NOUN", 3, "nsubj"));
  s.push_back(make_token(3, verb.de, verb.de, "VERB", 0, "root"));
  s.push_back(make_token(4, card.de, card.de, "NUM", 5, "nummod"));
  s.push_back(make_token(5, obj.de, obj.de_lemma, "NOUN", 3, "obj"));
  s.push_back(make_token(6, ".", ".", "PUNCT", 3, "punct"));
  auto& t = pair.trg.tokens;
  t.push_back(make_token(1, "The", "the", "DET", 2, "det"));
  t.push_back(make_token(2, subj.en, subj.en, "NOUN", 3, "nsubj"));
  t.push_back(make_token(3, verb.en, verb.en, "VERB", 0, "root"));
  t.push_back(make_token(4, card.en, card.en, "NUM", 5, "nummod"));
  t.push_back(make_token(5, obj.en, obj.en, "NOUN", 3, "obj"));
  t.push_back(make_token(6, ".", ".", "PUNCT", 3, "punct"));
  pair.alignment = AlignmentSet(identity_links(6));
  return pair;
}

AnnotatedSentencePair make_modifier_sentence(Rng& rng) {
  const PairEntry& adj = zipf_pick(rng, adjectives());
  const std::size_t mode = rng.below(4);  // 0 sehr, 1 nicht, 2 doubled, 3 bare

  AnnotatedSentencePair pair;
  auto& s = pair.src.tokens;
  auto& t = pair.trg.tokens;
  if (mode == 2) {
    s.push_back(make_token(1, "Das", "der", "PRON", 6, "nsubj"));
    s.push_back(make_token(2, "ist", "sein", "AUX", 6, "cop"));
    s.push_back(make_token(3, "sehr", "sehr", "ADV", 6, "advmod"));
    s.push_back(make_token(4, ",", ",", "PUNCT", 5, "punct"));
    s.push_back(make_token(5, "sehr", "sehr", "ADV", 6, "advmod"));
    s.push_back(make_token(6, adj.de, adj.de, "ADJ", 0, "root"));
    s.push_back(make_token(7, ".", ".", "PUNCT", 6, "punct"));
    t.push_back(make_token(1, "This", "this", "PRON", 6, "nsubj"));
    t.push_back(make_token(2, "is", "be", "AUX", 6, "cop"));
    t.push_back(make_token(3, "very", "very", "ADV", 6, "advmod"));
    t.push_back(make_token(4, ",", ",", "PUNCT", 5, "punct"));
    t.push_back(make_token(5, "very", "very", "ADV", 6, "advmod"));
    t.push_back(make_token(6, adj.en, adj.en, "ADJ", 0, "root"));
    t.push_back(make_token(7, ".", ".", "PUNCT", 6, "punct"));
    pair.alignment = AlignmentSet(identity_links(7));
    return pair;
  }
  if (mode == 3) {
    s.push_back(make_token(1, "Das", "der", "PRON", 3, "nsubj"));
    s.push_back(make_token(2, "ist", "sein", "AUX", 3, "cop"));
    s.push_back(make_token(3, adj.de, adj.de, "ADJ", 0, "root"));
    s.push_back(make_token(4, ".", ".", "PUNCT", 3, "punct"));
    t.push_back(make_token(1, "This", "this", "PRON", 3, "nsubj"));
    t.push_back(make_token(2, "is", "be", "AUX", 3, "cop"));
    t.push_back(make_token(3, adj.en, adj.en, "ADJ", 0, "root"));
    t.push_back(make_token(4, ".", ".", "PUNCT", 3, "punct"));
    pair.alignment = AlignmentSet(identity_links(4));
    return pair;
  }
  const bool negation = mode == 1;
  s.push_back(make_token(1, "Das", "der", "PRON", 4, "nsubj"));
  s.push_back(make_token(2, "ist", "sein", "AUX", 4, "cop"));
  s.push_back(make_token(3, negation ? "nicht" : "sehr", negation ? "nicht" : "sehr",
                         negation ? "PART" : "ADV", 4, "advmod"));
  s.push_back(make_token(4, adj.de, adj.de, "ADJ", 0, "root"));
  s.push_back(make_token(5, ".", ".", "PUNCT", 4, "punct"));
  t.push_back(make_token(1, "This", "this", "PRON", 4, "nsubj"));
  t.push_back(make_token(2, "is", "be", "AUX", 4, "cop"));
  t.push_back(make_token(3, negation ? "not" : "very", negation ? "not" : "very",
                         negation ? "PART" : "ADV", 4, "advmod"));
  t.push_back(make_token(4, adj.en, adj.en, "ADJ", 0, "root"));
  t.push_back(make_token(5, ".", ".", "PUNCT", 4, "punct"));
  pair.alignment = AlignmentSet(identity_links(5));
  return pair;
}

AnnotatedSentencePair make_plain_noun_sentence(Rng& rng) {
  if (rng.coin()) {
    const NounEntry& noun = zipf_pick(rng, plural_nouns());
    AnnotatedSentencePair pair;
    auto& s = pair.src.tokens;
    s.push_back(make_token(1, "Die", "der", "DET", 2, "det"));
    s.push_back(make_token(2, noun.de, noun.de_lemma, "NOUN", 4, "nsubj"));
    s.push_back(make_token(3, "sind", "sein", "AUX", 4, "cop"));
    s.push_back(make_token(4, "da", "da", "ADV", 0, "root"));
    s.push_back(make_token(5, ".", ".", "PUNCT", 4, "punct"));
    auto& t = pair.trg.tokens;
    t.push_back(make_token(1, "The", "the", "DET", 2, "det"));
    t.push_back(make_token(2, noun.en, noun.en, "NOUN", 4, "nsubj"));
    t.push_back(make_token(3, "are", "be", "AUX", 4, "cop"));
    t.push_back(make_token(4, "there", "there", "ADV", 0, "root"));
    t.push_back(make_token(5, ".", ".", "PUNCT", 4, "punct"));
    pair.alignment = AlignmentSet(identity_links(5));
    return pair;
  }
  const NounEntry& subj = rng.pick(subjects());
  const NounEntry& obj = zipf_pick(rng, singular_nouns());
  AnnotatedSentencePair pair;
  auto& s = pair.src.tokens;
  s.push_back(make_token(1, subj.de_det, "der", "DET", 2, "det"));
  s.push_back(make_token(2, subj.de, subj.de_lemma, "NOUN", 3, "nsubj"));
  s.push_back(make_token(3, "sieht", "sehen", "VERB", 0, "root"));
  s.push_back(make_token(4, "die", "der", "DET", 5, "det"));
  s.push_back(make_token(5, obj.de, obj.de_lemma, "NOUN", 3, "obj"));
  s.push_back(make_token(6, ".", ".", "PUNCT", 3, "punct"));
  auto& t = pair.trg.tokens;
  t.push_back(make_token(1, "The", "the", "DET", 2, "det"));
  t.push_back(make_token(2, subj.en, subj.en, "NOUN", 3, "nsubj"));
  t.push_back(make_token(3, "sees", "see", "VERB", 0, "root"));
  t.push_back(make_token(4, "the", "the", "DET", 5, "det"));
  t.push_back(make_token(5, obj.en, obj.en, "NOUN", 3, "obj"));
  t.push_back(make_token(6, ".", ".", "PUNCT", 3, "punct"));
  pair.alignment = AlignmentSet(identity_links(6));
  return pair;
}

AnnotatedSentencePair make_filler_sentence(Rng& rng) {
  static const std::vector<std::pair<PairEntry, PairEntry>> fillers = {
      {{"lachen", "laugh"}, {"oft", "often"}},
      {{"singen", "sing"}, {"gern", "gladly"}},
      {{"warten", "wait"}, {"hier", "here"}},
  };
  const auto& [verb, adv] = rng.pick(fillers);
  AnnotatedSentencePair pair;
  auto& s = pair.src.tokens;
  s.push_back(make_token(1, "Wir", "wir", "PRON", 2, "nsubj"));
  s.push_back(make_token(2, verb.de, verb.de, "VERB", 0, "root"));
  s.push_back(make_token(3, adv.de, adv.de, "ADV", 2, "advmod"));
  s.push_back(make_token(4, ".", ".", "PUNCT", 2, "punct"));
  auto& t = pair.trg.tokens;
  t.push_back(make_token(1, "We", "we", "PRON", 2, "nsubj"));
  t.push_back(make_token(2, verb.en, verb.en, "VERB", 0, "root"));
  t.push_back(make_token(3, adv.en, adv.en, "ADV", 2, "advmod"));
  t.push_back(make_token(4, ".", ".", "PUNCT", 2, "punct"));
  pair.alignment = AlignmentSet(identity_links(4));
  return pair;
}

AnnotatedSentencePair make_sentence(Rng& rng) {
  const std::size_t draw = rng.below(100);
  if (draw < 45) return make_prep_sentence(rng);
  if (draw < 55) return make_cardinal_sentence(rng);
  if (draw < 72) return make_modifier_sentence(rng);
  if (draw < 93) return make_plain_noun_sentence(rng);
  return make_filler_sentence(rng);
}

std::vector<AnnotatedSentencePair> make_split(std::size_t n, std::uint64_t seed,
                                              std::uint64_t stream) {
  std::vector<AnnotatedSentencePair> pairs;
  pairs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Rng rng = derive_rng(seed, stream, k);
    AnnotatedSentencePair pair = make_sentence(rng);
    pair.pair_id = static_cast<std::int64_t>(k + 1);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

// A handful of prefixes and suffixes per corpus type, standing in for a
// trained subword vocabulary.
std::vector<std::string> pseudo_subwords(const std::vector<AnnotatedSentencePair>& pairs) {
  std::set<std::string> entries;
  std::set<std::string> types;
  for (const AnnotatedSentencePair& p : pairs) {
    for (const Token& t : p.src.tokens) types.insert(fold_case(t.form));
    for (const Token& t : p.trg.tokens) types.insert(fold_case(t.form));
  }
  for (const std::string& type : types) {
    const auto chars = utf8_chars(type);
    for (std::size_t len : {3u, 4u}) {
      if (chars.size() > len) {
        entries.insert(type.substr(0, chars[len].offset));
        entries.insert(type.substr(chars[chars.size() - len].offset));
      }
    }
  }
  return std::vector<std::string>(entries.begin(), entries.end());
}

}  // namespace

DemoCorpus make_demo_corpus(const DemoOptions& options) {
  DemoCorpus corpus;
  corpus.train = make_split(options.train_pairs, options.seed, /*stream=*/0xD0ULL);
  corpus.test = make_split(options.test_pairs, options.seed, /*stream=*/0xD1ULL);
  corpus.vocab = pseudo_subwords(corpus.train);
  return corpus;
}

void write_corpus_files(const std::vector<AnnotatedSentencePair>& pairs,
                        const std::string& prefix) {
  std::ofstream src(prefix + ".src.conllu");
  std::ofstream trg(prefix + ".trg.conllu");
  std::ofstream align(prefix + ".align");
  if (!src || !trg || !align) {
    throw ConfigError("cannot write corpus files with prefix: " + prefix);
  }
  for (const AnnotatedSentencePair& pair : pairs) {
    write_conllu(pair.src, src);
    write_conllu(pair.trg, trg);
    bool first = true;
    for (const auto& [s, t] : pair.alignment.links()) {
      if (!first) align << ' ';
      align << s << '-' << t;
      first = false;
    }
    align << '\n';
  }
}

}  // namespace synmorph

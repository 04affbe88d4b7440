// Apache License, Version 2.0, refer to LICENSE.txt
#include "synmorph/morphemes.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "synmorph/errors.hpp"
#include "synmorph/text.hpp"

namespace synmorph {

namespace {

std::vector<std::string> explode_cps(std::string_view chars) {
  std::vector<std::string> out;
  for (const Utf8Char& c : utf8_chars(chars)) {
    out.push_back(std::string(chars.substr(c.offset, c.size)));
  }
  return out;
}

}  // namespace

MorphemeAlphabet MorphemeAlphabet::german() {
  return from_strings("bcdfghjklmnpqrstvwxyz", "aeiouäöü");
}

MorphemeAlphabet MorphemeAlphabet::english() {
  return from_strings("bcdfghjklmnpqrstvwxyz", "aeiou");
}

MorphemeAlphabet MorphemeAlphabet::from_strings(std::string_view consonants,
                                                std::string_view vowels) {
  MorphemeAlphabet a;
  a.consonants = explode_cps(consonants);
  a.vowels = explode_cps(vowels);
  if (a.consonants.empty() || a.vowels.empty()) {
    throw ConfigError("morpheme alphabet needs at least one consonant and one vowel");
  }
  for (const std::string& c : a.consonants) {
    if (std::find(a.vowels.begin(), a.vowels.end(), c) != a.vowels.end()) {
      throw ConfigError("morpheme alphabets overlap on '" + c + "'");
    }
  }
  return a;
}

std::string generate_morpheme(Rng& rng, std::size_t min_len, std::size_t max_len, StartClass start,
                              const MorphemeAlphabet& alphabet) {
  const std::size_t len = rng.range(min_len, max_len);
  bool consonant = start == StartClass::Consonant || (start == StartClass::Random && rng.coin());
  std::string out;
  for (std::size_t i = 0; i < len; ++i) {
    out += consonant ? rng.pick(alphabet.consonants) : rng.pick(alphabet.vowels);
    consonant = !consonant;
  }
  return out;
}

bool is_cv_alternating(std::string_view s, const MorphemeAlphabet& alphabet) {
  auto klass = [&alphabet](const std::string& cp) {
    const std::string folded = fold_case(cp);
    if (std::find(alphabet.consonants.begin(), alphabet.consonants.end(), folded) !=
        alphabet.consonants.end()) {
      return 1;
    }
    if (std::find(alphabet.vowels.begin(), alphabet.vowels.end(), folded) != alphabet.vowels.end()) {
      return 2;
    }
    return 0;
  };
  const auto chars = utf8_chars(s);
  int prev = 0;
  for (const Utf8Char& c : chars) {
    const int k = klass(std::string(s.substr(c.offset, c.size)));
    if (k == 0) return false;
    if (k == prev) return false;
    prev = k;
  }
  return !chars.empty();
}

AbsenceChecker::AbsenceChecker(const std::vector<std::string>& corpus_tokens,
                               const std::vector<std::string>& vocab) {
  const VowelSet vowels;
  std::size_t total = 0;
  for (const std::string& t : corpus_tokens) total += t.size() + 1;
  haystack_.reserve(total + 1);
  haystack_.push_back('\n');
  for (const std::string& t : corpus_tokens) {
    const std::string folded = fold_case(t);
    const auto chars = utf8_chars(folded);
    if (chars.size() == 5 && !vowels.contains(chars[0].cp) && vowels.contains(chars[1].cp) &&
        !vowels.contains(chars[2].cp) && vowels.contains(chars[3].cp) &&
        !vowels.contains(chars[4].cp)) {
      skeletons_.insert(utf8_encode(chars[0].cp) + utf8_encode(chars[2].cp) +
                        utf8_encode(chars[4].cp));
    }
    haystack_ += folded;
    haystack_.push_back('\n');
  }
  vocab_.reserve(vocab.size());
  for (const std::string& v : vocab) vocab_.insert(fold_case(v));
}

bool AbsenceChecker::is_absent(std::string_view candidate) const {
  const std::string folded = fold_case(candidate);
  if (vocab_.count(folded) > 0) return false;
  return haystack_.find(folded) == std::string::npos;
}

std::vector<std::string> PatternMorphemes::all_surfaces() const {
  std::vector<std::string> out = bound;
  if (!triple.empty()) out.push_back(triple);
  out.push_back(isolated);
  out.push_back(abstract_token);
  out.push_back(abstract_isolated);
  return out;
}

std::vector<std::string> PatternMorphemes::source_side_surfaces(bool abstract_variant) const {
  std::vector<std::string> out;
  if (abstract_variant) {
    if (surface_side == Side::Source) {
      out.push_back(abstract_token);
    } else {
      out.push_back(abstract_isolated);
    }
    return out;
  }
  if (surface_side == Side::Source) {
    out = bound;
    // The vowel-harmony skeleton is realized at transform time, not stored.
  } else {
    out.push_back(isolated);
  }
  return out;
}

const PatternMorphemes& MorphemeInventory::require(const std::string& pattern_id) const {
  const auto it = by_pattern.find(pattern_id);
  if (it == by_pattern.end()) {
    throw ConfigError("inventory has no morphemes for pattern '" + pattern_id + "'");
  }
  return it->second;
}

namespace {

struct SkeletonInfo {
  bool is_cvcvc = false;
  std::string skeleton;  // consonants at positions 0, 2, 4
};

SkeletonInfo skeleton_of(std::string_view folded, const VowelSet& vowels) {
  SkeletonInfo info;
  const auto chars = utf8_chars(folded);
  if (chars.size() != 5) return info;
  const bool shape = !vowels.contains(chars[0].cp) && vowels.contains(chars[1].cp) &&
                     !vowels.contains(chars[2].cp) && vowels.contains(chars[3].cp) &&
                     !vowels.contains(chars[4].cp);
  if (!shape) return info;
  info.is_cvcvc = true;
  info.skeleton = utf8_encode(chars[0].cp) + utf8_encode(chars[2].cp) + utf8_encode(chars[4].cp);
  return info;
}

bool doubled_halves(std::string_view folded) {
  const auto chars = utf8_chars(folded);
  if (chars.size() < 2 || chars.size() % 2 != 0) return false;
  const std::size_t mid_cp = chars.size() / 2;
  const std::size_t mid_byte = chars[mid_cp].offset;
  return folded.substr(0, mid_byte) == folded.substr(mid_byte);
}

// Tracks everything already assigned so new candidates stay unambiguous.
class UniquenessGuard {
 public:
  bool admissible(std::string_view folded, bool is_triple) const {
    if (assigned_.count(std::string(folded)) > 0) return false;
    if (!is_triple) {
      for (const std::string& a : cv_surfaces_) {
        if (a.find(folded) != std::string::npos || folded.find(a) != std::string_view::npos) {
          return false;
        }
      }
      if (doubled_halves(folded)) return false;
      const SkeletonInfo info = skeleton_of(folded, vowels_);
      if (info.is_cvcvc && triples_.count(info.skeleton) > 0) return false;
    } else {
      if (skeletons_in_use_.count(std::string(folded)) > 0) return false;
    }
    return true;
  }

  void admit(std::string_view folded, bool is_triple) {
    assigned_.insert(std::string(folded));
    if (is_triple) {
      triples_.insert(std::string(folded));
    } else {
      cv_surfaces_.push_back(std::string(folded));
      const SkeletonInfo info = skeleton_of(folded, vowels_);
      if (info.is_cvcvc) skeletons_in_use_.insert(info.skeleton);
    }
  }

 private:
  VowelSet vowels_;  // extraction vowels; generation vowels are a subset
  std::unordered_set<std::string> assigned_;
  std::vector<std::string> cv_surfaces_;
  std::unordered_set<std::string> triples_;
  std::unordered_set<std::string> skeletons_in_use_;
};

const MorphemeAlphabet& alphabet_for(Side side, const InventoryConfig& config) {
  return side == Side::Source ? config.source_alphabet : config.target_alphabet;
}

}  // namespace

MorphemeInventory build_inventory(const std::vector<PatternPair>& patterns,
                                  const std::vector<std::string>& corpus_tokens,
                                  const std::vector<std::string>& vocab, std::uint64_t seed,
                                  const InventoryConfig& config) {
  const AbsenceChecker checker(corpus_tokens, vocab);
  UniquenessGuard guard;
  Rng rng = derive_rng(seed, /*stream=*/0xA11A5ULL, 0);

  MorphemeInventory inventory;
  inventory.seed = seed;

  auto sample = [&](const std::string& pattern_id, const std::string& slot, Side side,
                    std::size_t min_len, std::size_t max_len, bool is_triple) {
    const MorphemeAlphabet& alphabet = alphabet_for(side, config);
    for (std::size_t attempt = 0; attempt < config.max_attempts; ++attempt) {
      std::string candidate;
      if (is_triple) {
        for (int i = 0; i < 3; ++i) candidate += rng.pick(alphabet.consonants);
      } else {
        candidate = generate_morpheme(rng, min_len, max_len, StartClass::Consonant, alphabet);
      }
      const std::string folded = fold_case(candidate);
      if (!is_triple && !checker.is_absent(folded)) continue;
      if (is_triple && checker.corpus_skeletons().count(folded) > 0) continue;
      if (!guard.admissible(folded, is_triple)) continue;
      guard.admit(folded, is_triple);
      return candidate;
    }
    throw ExhaustionError("pattern " + pattern_id + " slot " + slot + ": gave up after " +
                          std::to_string(config.max_attempts) + " candidates");
  };

  for (const PatternPair& p : patterns) {
    PatternMorphemes m;
    m.surface_side = p.surface_side;
    const Side bound_side = p.surface_side;
    const Side isolated_side = other_side(p.surface_side);

    switch (p.phenomenon) {
      case Phenomenon::Compound: {
        std::string piece = sample(p.id, "bound1", bound_side, config.min_len, config.max_len, false);
        if (bound_side == Side::Source) piece = upper_first(piece);
        m.bound.push_back(piece);
        break;
      }
      case Phenomenon::Circumfix: {
        std::string pre = sample(p.id, "bound1", bound_side, config.circumfix_piece_len,
                                 config.circumfix_piece_len, false);
        if (bound_side == Side::Source) pre = upper_first(pre);
        m.bound.push_back(pre);
        m.bound.push_back(sample(p.id, "bound2", bound_side, config.circumfix_piece_len,
                                 config.circumfix_piece_len, false));
        break;
      }
      case Phenomenon::Infix:
        m.bound.push_back(sample(p.id, "bound1", bound_side, config.min_len, config.max_len, false));
        break;
      case Phenomenon::VowelHarmony:
        m.triple = sample(p.id, "triple", bound_side, 3, 3, true);
        break;
      case Phenomenon::RedupPartial:
      case Phenomenon::RedupTriple:
      case Phenomenon::RedupFull:
        break;  // the phenomenon reuses the base word itself
    }

    m.isolated = sample(p.id, "isolated", isolated_side, config.min_len, config.max_len, false);
    m.abstract_token = p.abstract_token();
    m.abstract_isolated =
        sample(p.id, "abstract_isolated", isolated_side, config.min_len, config.max_len, false);

    inventory.by_pattern.emplace(p.id, std::move(m));
  }
  return inventory;
}

void write_inventory(const MorphemeInventory& inventory, std::ostream& out) {
  out << "# seed=" << inventory.seed << "\n";
  out << "pattern_id\tvariant\tslot\tside\tsurface\n";
  for (const auto& [id, m] : inventory.by_pattern) {
    const std::string bound_side = to_string(m.surface_side);
    const std::string iso_side = to_string(other_side(m.surface_side));
    for (std::size_t i = 0; i < m.bound.size(); ++i) {
      out << id << "\tsurface\tbound" << (i + 1) << '\t' << bound_side << '\t' << m.bound[i] << '\n';
    }
    if (!m.triple.empty()) {
      out << id << "\tsurface\ttriple\t" << bound_side << '\t' << m.triple << '\n';
    }
    out << id << "\tsurface\tisolated\t" << iso_side << '\t' << m.isolated << '\n';
    out << id << "\tabstract\tabstract\t" << bound_side << '\t' << m.abstract_token << '\n';
    out << id << "\tabstract\tisolated\t" << iso_side << '\t' << m.abstract_isolated << '\n';
  }
}

void write_inventory_file(const MorphemeInventory& inventory, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write inventory file: " + path);
  write_inventory(inventory, out);
}

MorphemeInventory parse_inventory(std::istream& in) {
  MorphemeInventory inventory;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::size_t eq = line.find("seed=");
      if (eq != std::string::npos) {
        std::uint64_t seed = 0;
        const char* begin = line.data() + eq + 5;
        std::from_chars(begin, line.data() + line.size(), seed);
        inventory.seed = seed;
      }
      continue;
    }
    const std::vector<std::string> cols = split_char(line, '\t');
    if (!cols.empty() && cols[0] == "pattern_id") continue;
    if (cols.size() != 5) {
      throw ParseError("inventory line " + std::to_string(line_no) + ": expected 5 columns, got " +
                       std::to_string(cols.size()));
    }
    const std::string& id = cols[0];
    const std::string& variant = cols[1];
    const std::string& slot = cols[2];
    const Side side = side_from_string(cols[3]);
    const std::string& surface = cols[4];
    if (surface.empty()) {
      throw ParseError("inventory line " + std::to_string(line_no) + ": empty surface");
    }

    PatternMorphemes& m = inventory.by_pattern[id];
    if (variant == "surface") {
      if (slot == "bound1") {
        if (m.bound.empty()) m.bound.resize(1);
        m.bound[0] = surface;
        m.surface_side = side;
      } else if (slot == "bound2") {
        if (m.bound.size() < 2) m.bound.resize(2);
        m.bound[1] = surface;
        m.surface_side = side;
      } else if (slot == "triple") {
        m.triple = surface;
        m.surface_side = side;
      } else if (slot == "isolated") {
        m.isolated = surface;
      } else {
        throw ParseError("inventory line " + std::to_string(line_no) + ": unknown slot '" + slot + "'");
      }
    } else if (variant == "abstract") {
      if (slot == "abstract") {
        m.abstract_token = surface;
        m.surface_side = side;
      } else if (slot == "isolated") {
        m.abstract_isolated = surface;
      } else {
        throw ParseError("inventory line " + std::to_string(line_no) + ": unknown slot '" + slot + "'");
      }
    } else {
      throw ParseError("inventory line " + std::to_string(line_no) + ": unknown variant '" +
                       variant + "'");
    }
  }
  for (const auto& [id, m] : inventory.by_pattern) {
    if (m.isolated.empty() || m.abstract_token.empty() || m.abstract_isolated.empty()) {
      throw ParseError("inventory entry for pattern '" + id + "' is incomplete");
    }
    for (const std::string& b : m.bound) {
      if (b.empty()) throw ParseError("inventory entry for pattern '" + id + "' has an empty bound slot");
    }
  }
  if (inventory.by_pattern.empty()) throw ParseError("inventory file contains no entries");
  return inventory;
}

MorphemeInventory load_inventory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open inventory file: " + path);
  return parse_inventory(in);
}

std::vector<std::string> load_wordlist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open word list: " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

}  // namespace synmorph

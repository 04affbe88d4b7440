// Apache License, Version 2.0, refer to LICENSE.txt
#include "synmorph/builder.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "synmorph/errors.hpp"
#include "synmorph/matcher.hpp"
#include "synmorph/parallel.hpp"
#include "synmorph/rng.hpp"

namespace synmorph {

std::size_t Manifest::train_frequency(const std::string& pattern_id,
                                      const std::string& base_lemma) const {
  const auto pit = base_freq.find(pattern_id);
  if (pit == base_freq.end()) return 0;
  const auto lit = pit->second.find(base_lemma);
  return lit == pit->second.end() ? 0 : lit->second;
}

const std::vector<std::string>& bucket_labels() {
  static const std::vector<std::string> labels = {"0",      "1-5",     "6-15",     "16-50",
                                                  "51-100", "101-500", "501-1000", ">1000"};
  return labels;
}

std::string bucket_of(std::size_t freq) {
  const auto& labels = bucket_labels();
  if (freq == 0) return labels[0];
  if (freq <= 5) return labels[1];
  if (freq <= 15) return labels[2];
  if (freq <= 50) return labels[3];
  if (freq <= 100) return labels[4];
  if (freq <= 500) return labels[5];
  if (freq <= 1000) return labels[6];
  return labels[7];
}

int bucket_index(const std::string& label) {
  const auto& labels = bucket_labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  return -1;
}

namespace {

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string digest_config(const std::vector<PatternPair>& patterns, const BuildConfig& config) {
  std::ostringstream canon;
  write_patterns(patterns, canon);
  canon << "seed=" << config.seed << ";abstract=" << (config.abstract_variants ? 1 : 0);
  for (const auto& [id, cap] : config.cap_overrides) canon << ";cap:" << id << "=" << cap;
  return fnv1a_hex(canon.str());
}

struct SiteOutcome {
  bool applicable = false;
  ModifiedPairRecord surface;
  ModifiedPairRecord abstract_rec;
};

// Transforms each site into both variants; a site whose surface rule cannot
// apply is dropped whole so that variant counts stay equal.
std::vector<SiteOutcome> transform_sites(const std::vector<AnnotatedSentencePair>& pairs,
                                         const std::vector<MatchSite>& sites,
                                         const std::vector<PatternPair>& patterns,
                                         const MorphemeInventory& inventory,
                                         const BuildConfig& config) {
  std::map<std::string, const PatternPair*> by_id;
  for (const PatternPair& p : patterns) by_id[p.id] = &p;
  std::map<std::int64_t, const AnnotatedSentencePair*> pair_by_id;
  for (const AnnotatedSentencePair& p : pairs) pair_by_id[p.pair_id] = &p;

  std::vector<SiteOutcome> out(sites.size());
  parallel_for(sites.size(), config.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const MatchSite& site = sites[k];
      const PatternPair& pattern = *by_id.at(site.pattern_id);
      const PatternMorphemes& morphemes = inventory.require(site.pattern_id);
      const AnnotatedSentencePair& pair = *pair_by_id.at(site.pair_id);
      auto surface = transform_site(pair, site, pattern, morphemes, Variant::Surface, config.vowels);
      if (!surface) continue;
      out[k].applicable = true;
      out[k].surface = std::move(*surface);
      auto abstract_rec =
          transform_site(pair, site, pattern, morphemes, Variant::Abstract, config.vowels);
      // The abstract rewrite has no string-rule precondition.
      out[k].abstract_rec = std::move(*abstract_rec);
    }
  });
  return out;
}

}  // namespace

BuildResult build_dataset(const std::vector<AnnotatedSentencePair>& train_pairs,
                          const std::vector<AnnotatedSentencePair>& test_pairs,
                          const std::vector<PatternPair>& patterns,
                          const MorphemeInventory& inventory, const BuildConfig& config) {
  for (const PatternPair& p : patterns) {
    if (!inventory.has(p.id)) {
      throw ConfigError("inventory has no entry for pattern '" + p.id + "'");
    }
  }

  BuildResult result;
  result.manifest.seed = config.seed;
  result.manifest.abstract_enabled = config.abstract_variants;
  result.manifest.config_digest = digest_config(patterns, config);
  for (const PatternPair& p : patterns) result.manifest.patterns[p.id];

  // Train side: match, apply caps, rewrite.
  ScanResult train_scan = scan_corpus(train_pairs, patterns, config.seed, config.threads);
  std::vector<MatchSite> kept;
  kept.reserve(train_scan.sites.size());
  {
    std::map<std::string, std::vector<std::size_t>> by_pattern;
    for (std::size_t i = 0; i < train_scan.sites.size(); ++i) {
      by_pattern[train_scan.sites[i].pattern_id].push_back(i);
    }
    std::vector<bool> keep(train_scan.sites.size(), true);
    for (std::size_t p = 0; p < patterns.size(); ++p) {
      const PatternPair& pattern = patterns[p];
      std::optional<std::size_t> cap = pattern.max_train_insertions;
      const auto it = config.cap_overrides.find(pattern.id);
      if (it != config.cap_overrides.end()) cap = it->second;
      if (!cap) continue;
      auto& indices = by_pattern[pattern.id];
      if (indices.size() <= *cap) continue;
      // Seeded partial Fisher-Yates; the selected sites keep corpus order.
      Rng rng = derive_rng(config.seed, /*stream=*/0xCA9ULL, p);
      for (std::size_t i = 0; i < *cap; ++i) {
        const std::size_t j = i + rng.below(indices.size() - i);
        std::swap(indices[i], indices[j]);
      }
      for (std::size_t i = *cap; i < indices.size(); ++i) keep[indices[i]] = false;
    }
    for (std::size_t i = 0; i < train_scan.sites.size(); ++i) {
      if (keep[i]) kept.push_back(train_scan.sites[i]);
    }
  }

  const std::vector<SiteOutcome> train_out =
      transform_sites(train_pairs, kept, patterns, inventory, config);

  // Originals first, byte-identical to the input renderings.
  result.train_src.resize(train_pairs.size());
  result.train_trg.resize(train_pairs.size());
  parallel_for(train_pairs.size(), config.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      result.train_src[i] = render(train_pairs[i].src);
      result.train_trg[i] = render(train_pairs[i].trg);
    }
  });
  for (const SiteOutcome& o : train_out) {
    if (!o.applicable) continue;
    result.train_src.push_back(o.surface.src_text);
    result.train_trg.push_back(o.surface.trg_text);
  }
  if (config.abstract_variants) {
    for (const SiteOutcome& o : train_out) {
      if (!o.applicable) continue;
      result.train_src.push_back(o.abstract_rec.src_text);
      result.train_trg.push_back(o.abstract_rec.trg_text);
    }
  }

  for (std::size_t k = 0; k < train_out.size(); ++k) {
    const SiteOutcome& o = train_out[k];
    if (!o.applicable) {
      result.manifest.patterns[kept[k].pattern_id].skipped_count += 1;
      continue;
    }
    PatternCounts& counts = result.manifest.patterns[o.surface.pattern_id];
    counts.train_count += 1;
    result.manifest.base_freq[o.surface.pattern_id][o.surface.base_src_lemma] += 1;
  }

  // Test side: every matched pair becomes a test record, no caps.
  if (!test_pairs.empty()) {
    std::map<std::string, std::size_t> skipped;
    result.test_records =
        build_test_records(test_pairs, patterns, inventory, result.manifest, config, &skipped);
    for (const TestRecord& tr : result.test_records) {
      if (tr.record.variant == Variant::Surface) {
        result.manifest.patterns[tr.record.pattern_id].test_count += 1;
      }
    }
    for (const auto& [id, n] : skipped) result.manifest.patterns[id].skipped_count += n;
  }
  return result;
}

std::vector<TestRecord> build_test_records(const std::vector<AnnotatedSentencePair>& pairs,
                                           const std::vector<PatternPair>& patterns,
                                           const MorphemeInventory& inventory,
                                           const Manifest& manifest, const BuildConfig& config,
                                           std::map<std::string, std::size_t>* skipped) {
  ScanResult scan = scan_corpus(pairs, patterns, config.seed, config.threads);
  const std::vector<SiteOutcome> outcomes =
      transform_sites(pairs, scan.sites, patterns, inventory, config);

  std::vector<TestRecord> records;
  auto push_record = [&](const ModifiedPairRecord& rec) {
    TestRecord tr;
    tr.record = rec;
    tr.base_train_freq = manifest.train_frequency(rec.pattern_id, rec.base_src_lemma);
    records.push_back(std::move(tr));
  };
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (!outcomes[k].applicable) {
      if (skipped) (*skipped)[scan.sites[k].pattern_id] += 1;
      continue;
    }
    push_record(outcomes[k].surface);
  }
  if (config.abstract_variants) {
    for (const SiteOutcome& o : outcomes) {
      if (o.applicable) push_record(o.abstract_rec);
    }
  }
  return records;
}

void write_manifest(const Manifest& manifest, std::ostream& out) {
  out << "# seed=" << manifest.seed << '\n';
  out << "# config_digest=" << manifest.config_digest << '\n';
  out << "# abstract=" << (manifest.abstract_enabled ? 1 : 0) << '\n';
  out << "pattern_id\tvariant\ttrain_count\ttest_count\tskipped_count\n";
  for (const auto& [id, counts] : manifest.patterns) {
    out << id << "\tsurface\t" << counts.train_count << '\t' << counts.test_count << '\t'
        << counts.skipped_count << '\n';
    const std::size_t factor = manifest.abstract_enabled ? 1 : 0;
    out << id << "\tabstract\t" << counts.train_count * factor << '\t'
        << counts.test_count * factor << '\t' << counts.skipped_count * factor << '\n';
  }
  out << '\n';
  out << "pattern_id\tbase_lemma\tfreq\n";
  for (const auto& [id, freqs] : manifest.base_freq) {
    for (const auto& [lemma, freq] : freqs) {
      out << id << '\t' << lemma << '\t' << freq << '\n';
    }
  }
}

namespace {

std::size_t to_size(const std::string& s, const char* what) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError(std::string("bad ") + what + " value '" + s + "'");
  }
  return v;
}

}  // namespace

Manifest parse_manifest(std::istream& in) {
  Manifest manifest;
  std::string line;
  int section = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (section == 1) section = 2;
      continue;
    }
    if (line[0] == '#') {
      const auto grab = [&line](std::string_view key) -> std::optional<std::string> {
        const std::size_t at = line.find(key);
        if (at == std::string::npos) return std::nullopt;
        return line.substr(at + key.size());
      };
      if (auto v = grab("seed=")) manifest.seed = to_size(*v, "seed");
      if (auto v = grab("config_digest=")) manifest.config_digest = *v;
      if (auto v = grab("abstract=")) manifest.abstract_enabled = *v == "1";
      continue;
    }
    const std::vector<std::string> cols = split_char(line, '\t');
    if (cols[0] == "pattern_id") {
      if (section == 0) section = 1;
      continue;
    }
    if (section <= 1) {
      if (cols.size() != 5) throw ParseError("manifest counts row needs 5 columns");
      if (cols[1] == "surface") {
        PatternCounts& c = manifest.patterns[cols[0]];
        c.train_count = to_size(cols[2], "train_count");
        c.test_count = to_size(cols[3], "test_count");
        c.skipped_count = to_size(cols[4], "skipped_count");
      }
    } else {
      if (cols.size() != 3) throw ParseError("manifest frequency row needs 3 columns");
      manifest.base_freq[cols[0]][cols[1]] = to_size(cols[2], "freq");
    }
  }
  return manifest;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest: " + path);
  return parse_manifest(in);
}

void write_test_meta(const std::vector<TestRecord>& records, std::ostream& out, bool with_bucket,
                     const std::vector<std::string>& buckets) {
  out << "line_no\tpattern_id\tvariant\tcheck_kind\tmorpheme_parts\ttriple\tbase_src\tbase_trg\t"
         "base_train_freq";
  if (with_bucket) out << "\tbucket";
  out << '\n';
  for (std::size_t i = 0; i < records.size(); ++i) {
    const TestRecord& r = records[i];
    const ExpectedOutcome& e = r.record.expected;
    std::string parts;
    for (std::size_t k = 0; k < e.morpheme_parts.size(); ++k) {
      if (k > 0) parts.push_back(',');
      parts += e.morpheme_parts[k];
    }
    out << (i + 1) << '\t' << r.record.pattern_id << '\t' << to_string(r.record.variant) << '\t'
        << to_string(e.check_kind) << '\t' << (parts.empty() ? "-" : parts) << '\t'
        << (e.triple.empty() ? "-" : e.triple) << '\t' << r.record.base_src << '\t'
        << r.record.base_trg << '\t' << r.base_train_freq;
    if (with_bucket) out << '\t' << (i < buckets.size() ? buckets[i] : bucket_of(r.base_train_freq));
    out << '\n';
  }
}

std::vector<MetaRow> parse_test_meta(std::istream& in) {
  std::vector<MetaRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cols = split_char(line, '\t');
    if (cols[0] == "line_no") continue;
    if (cols.size() != 9 && cols.size() != 10) {
      throw ParseError("test meta line " + std::to_string(line_no) + ": expected 9 or 10 columns, got " +
                       std::to_string(cols.size()));
    }
    MetaRow row;
    row.line_no = static_cast<std::int64_t>(to_size(cols[0], "line_no"));
    row.pattern_id = cols[1];
    row.variant = variant_from_string(cols[2]);
    row.expected.check_kind = check_kind_from_string(cols[3]);
    if (cols[4] != "-") {
      for (const std::string& part : split_char(cols[4], ',')) row.expected.morpheme_parts.push_back(part);
    }
    if (cols[5] != "-") row.expected.triple = cols[5];
    row.base_src = cols[6];
    row.base_trg = cols[7];
    row.base_train_freq = to_size(cols[8], "base_train_freq");
    if (cols.size() == 10) row.bucket = cols[9];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MetaRow> load_test_meta(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open test metadata: " + path);
  return parse_test_meta(in);
}

void write_lines(const std::vector<std::string>& lines, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write file: " + path);
  for (const std::string& l : lines) out << l << '\n';
}

std::vector<std::string> load_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace synmorph

// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "synmorph/corpus.hpp"
#include "synmorph/morphemes.hpp"
#include "synmorph/patterns.hpp"
#include "synmorph/text.hpp"
#include "synmorph/transforms.hpp"

namespace synmorph {

struct BuildConfig {
  std::uint64_t seed = 0;
  bool abstract_variants = true;
  unsigned threads = 1;
  // Overrides the per-pattern max_train_insertions from the pattern config.
  std::map<std::string, std::size_t> cap_overrides;
  VowelSet vowels;
};

struct PatternCounts {
  std::size_t train_count = 0;   // kept training insertions (sites)
  std::size_t test_count = 0;    // test insertions (sites)
  std::size_t skipped_count = 0; // matched sites whose string rule was inapplicable
};

struct Manifest {
  std::uint64_t seed = 0;
  std::string config_digest;
  bool abstract_enabled = true;
  std::map<std::string, PatternCounts> patterns;
  // pattern id -> source base lemma -> training insertions of that pattern
  std::map<std::string, std::map<std::string, std::size_t>> base_freq;

  std::size_t train_frequency(const std::string& pattern_id, const std::string& base_lemma) const;
};

/// Appendix-style frequency classes: 0, 1-5, 6-15, 16-50, 51-100, 101-500,
/// 501-1000, plus an >1000 overflow bucket.
std::string bucket_of(std::size_t freq);
const std::vector<std::string>& bucket_labels();
int bucket_index(const std::string& label);  // -1 for unknown labels

struct TestRecord {
  ModifiedPairRecord record;
  std::size_t base_train_freq = 0;
};

struct BuildResult {
  std::vector<std::string> train_src;  // originals, then surface, then abstract
  std::vector<std::string> train_trg;
  std::vector<TestRecord> test_records;  // surface block, then abstract block
  Manifest manifest;
};

/// Matches and rewrites both corpora: training output keeps every original
/// pair and appends the modified variants, the test output keeps only the
/// modified records. Capped patterns are subsampled with the seed, so a rerun
/// with the same inputs is byte-identical. test_pairs may be empty.
BuildResult build_dataset(const std::vector<AnnotatedSentencePair>& train_pairs,
                          const std::vector<AnnotatedSentencePair>& test_pairs,
                          const std::vector<PatternPair>& patterns,
                          const MorphemeInventory& inventory, const BuildConfig& config);

/// Scans and rewrites one corpus into test records (surface block, then
/// abstract block when enabled), looking training frequencies up in an
/// existing manifest. Inapplicable sites are tallied into *skipped.
std::vector<TestRecord> build_test_records(const std::vector<AnnotatedSentencePair>& pairs,
                                           const std::vector<PatternPair>& patterns,
                                           const MorphemeInventory& inventory,
                                           const Manifest& manifest, const BuildConfig& config,
                                           std::map<std::string, std::size_t>* skipped = nullptr);

void write_manifest(const Manifest& manifest, std::ostream& out);
Manifest parse_manifest(std::istream& in);
Manifest load_manifest(const std::string& path);

// One row of test metadata; rides in a sidecar TSV next to test.src/test.trg.
struct MetaRow {
  std::int64_t line_no = 0;  // 1-based line in the test files
  std::string pattern_id;
  Variant variant = Variant::Surface;
  ExpectedOutcome expected;
  std::string base_src;
  std::string base_trg;
  std::size_t base_train_freq = 0;
  std::string bucket;  // only present in augmented test sets
};

void write_test_meta(const std::vector<TestRecord>& records, std::ostream& out,
                     bool with_bucket = false, const std::vector<std::string>& buckets = {});
std::vector<MetaRow> parse_test_meta(std::istream& in);
std::vector<MetaRow> load_test_meta(const std::string& path);

void write_lines(const std::vector<std::string>& lines, const std::string& path);
std::vector<std::string> load_lines(const std::string& path);

}  // namespace synmorph

// Apache License, Version 2.0, refer to LICENSE.txt
//
// Command-line front end: morpheme generation, dataset building, output
// evaluation, test-set augmentation and report printing.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "synmorph/augmenter.hpp"
#include "synmorph/builder.hpp"
#include "synmorph/corpus.hpp"
#include "synmorph/demo.hpp"
#include "synmorph/errors.hpp"
#include "synmorph/evaluator.hpp"
#include "synmorph/log.hpp"
#include "synmorph/morphemes.hpp"
#include "synmorph/parallel.hpp"
#include "synmorph/patterns.hpp"
#include "synmorph/transforms.hpp"

namespace {

using namespace synmorph;
namespace fs = std::filesystem;

void require_file(const std::string& path, const char* what) {
  if (!fs::exists(path)) {
    throw ConfigError(std::string(what) + " not found: " + path);
  }
}

std::map<std::string, std::size_t> parse_caps(const std::vector<std::string>& raw) {
  std::map<std::string, std::size_t> caps;
  for (const std::string& item : raw) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--cap expects PATTERN=N, got '" + item + "'");
    }
    caps[item.substr(0, eq)] = static_cast<std::size_t>(std::stoull(item.substr(eq + 1)));
  }
  return caps;
}

std::vector<std::string> corpus_forms(const std::vector<std::string>& conllu_files) {
  std::vector<std::string> forms;
  for (const std::string& path : conllu_files) {
    require_file(path, "corpus file");
    for (const AnnotatedSentence& s : parse_conllu_file(path)) {
      for (const Token& t : s.tokens) forms.push_back(t.form);
    }
  }
  return forms;
}

struct CorpusArgs {
  std::string src_conllu;
  std::string trg_conllu;
  std::string align;
};

std::vector<AnnotatedSentencePair> load_corpus(const CorpusArgs& args) {
  require_file(args.src_conllu, "source CoNLL-U");
  require_file(args.trg_conllu, "target CoNLL-U");
  require_file(args.align, "alignment file");
  return load_parallel(args.src_conllu, args.trg_conllu, args.align);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write: " + path);
  out << content;
}

// ---------------------------------------------------------------- commands

int cmd_gen_morphemes(const std::string& patterns_path, const std::string& vocab_path,
                      const std::vector<std::string>& conllu_files, std::uint64_t seed,
                      const std::string& out_path, const std::string& src_vowels,
                      const std::string& trg_vowels, const std::string& consonants) {
  require_file(patterns_path, "pattern config");
  const std::vector<PatternPair> patterns = load_patterns(patterns_path);

  std::vector<std::string> vocab;
  if (!vocab_path.empty()) {
    require_file(vocab_path, "vocabulary file");
    vocab = load_wordlist(vocab_path);
  }
  const std::vector<std::string> corpus = corpus_forms(conllu_files);

  InventoryConfig config;
  config.source_alphabet = MorphemeAlphabet::from_strings(consonants, src_vowels);
  config.target_alphabet = MorphemeAlphabet::from_strings(consonants, trg_vowels);
  const MorphemeInventory inventory = build_inventory(patterns, corpus, vocab, seed, config);
  write_inventory_file(inventory, out_path);
  log_line("gen-morphemes", {{"patterns", std::to_string(patterns.size())},
                             {"corpus_tokens", std::to_string(corpus.size())},
                             {"vocab", std::to_string(vocab.size())},
                             {"seed", std::to_string(seed)},
                             {"out", out_path}});
  return 0;
}

int cmd_build(const CorpusArgs& train, const std::optional<CorpusArgs>& test,
              const std::string& patterns_path, const std::string& inventory_path,
              std::uint64_t seed, const std::string& out_dir,
              const std::vector<std::string>& caps, bool no_abstract, unsigned threads,
              bool dry_run, const std::string& vowels) {
  require_file(patterns_path, "pattern config");
  require_file(inventory_path, "inventory file");
  const std::vector<PatternPair> patterns = load_patterns(patterns_path);
  const MorphemeInventory inventory = load_inventory(inventory_path);

  BuildConfig config;
  config.seed = seed;
  config.abstract_variants = !no_abstract;
  config.threads = threads;
  config.cap_overrides = parse_caps(caps);
  config.vowels = VowelSet(vowels);

  const std::vector<AnnotatedSentencePair> train_pairs = load_corpus(train);
  std::vector<AnnotatedSentencePair> test_pairs;
  if (test) test_pairs = load_corpus(*test);

  const BuildResult result = build_dataset(train_pairs, test_pairs, patterns, inventory, config);

  if (dry_run) {
    write_manifest(result.manifest, std::cout);
    log_line("build", {{"dry_run", "1"},
                       {"train_lines", std::to_string(result.train_src.size())},
                       {"test_lines", std::to_string(result.test_records.size())}});
    return 0;
  }

  fs::create_directories(out_dir);
  const fs::path out(out_dir);
  write_lines(result.train_src, (out / "train.src").string());
  write_lines(result.train_trg, (out / "train.trg").string());
  std::vector<std::string> test_src;
  std::vector<std::string> test_trg;
  for (const TestRecord& r : result.test_records) {
    test_src.push_back(r.record.src_text);
    test_trg.push_back(r.record.trg_text);
  }
  write_lines(test_src, (out / "test.src").string());
  write_lines(test_trg, (out / "test.trg").string());
  {
    std::ofstream meta((out / "test.meta.tsv").string());
    if (!meta) throw ConfigError("cannot write test metadata");
    write_test_meta(result.test_records, meta);
  }
  {
    std::ofstream manifest((out / "manifest.tsv").string());
    if (!manifest) throw ConfigError("cannot write manifest");
    write_manifest(result.manifest, manifest);
  }
  log_line("build", {{"train_lines", std::to_string(result.train_src.size())},
                     {"test_lines", std::to_string(result.test_records.size())},
                     {"out_dir", out_dir},
                     {"seed", std::to_string(seed)},
                     {"threads", std::to_string(threads)}});
  return 0;
}

int cmd_evaluate(const std::string& outputs_path, const std::string& meta_path,
                 const std::string& inventory_path, const std::string& patterns_path,
                 const std::string& manifest_path, const std::string& trg_vocab_path,
                 const std::string& out_dir, const std::string& vowels) {
  require_file(outputs_path, "system output");
  require_file(meta_path, "test metadata");
  require_file(inventory_path, "inventory file");
  require_file(patterns_path, "pattern config");

  const std::vector<std::string> outputs = load_lines(outputs_path);
  const std::vector<MetaRow> meta = load_test_meta(meta_path);
  const MorphemeInventory inventory = load_inventory(inventory_path);
  const std::vector<PatternPair> patterns = load_patterns(patterns_path);

  if (!manifest_path.empty()) {
    require_file(manifest_path, "manifest");
    const Manifest manifest = load_manifest(manifest_path);
    for (const MetaRow& row : meta) {
      if (manifest.patterns.count(row.pattern_id) == 0) {
        log_line("warn", {{"reason", "pattern missing from manifest"}, {"pattern", row.pattern_id}});
      }
    }
  }

  std::unordered_set<std::string> trg_vocab;
  if (!trg_vocab_path.empty()) {
    require_file(trg_vocab_path, "target vocabulary");
    for (const std::string& w : load_wordlist(trg_vocab_path)) trg_vocab.insert(fold_case(w));
  }

  ClassifyContext ctx;
  ctx.inventory = &inventory;
  ctx.patterns = &patterns;
  ctx.trg_vocab = trg_vocab.empty() ? nullptr : &trg_vocab;
  ctx.vowels = VowelSet(vowels);

  const Report report = evaluate(outputs, meta, ctx);

  fs::create_directories(out_dir);
  const fs::path out(out_dir);
  {
    std::ofstream f((out / "report.tsv").string());
    write_report(report, f);
  }
  {
    std::ofstream f((out / "buckets.tsv").string());
    write_buckets(report, f);
  }
  {
    std::ofstream f((out / "errors.tsv").string());
    write_errors(report, f);
  }
  for (const auto& [key, stat] : report.by_pattern_variant) {
    char acc[32];
    std::snprintf(acc, sizeof(acc), "%.4f", stat.accuracy());
    log_line("accuracy", {{"pattern", key.first},
                          {"variant", key.second},
                          {"n", std::to_string(stat.n)},
                          {"value", acc}});
  }
  log_line("evaluate", {{"lines", std::to_string(outputs.size())}, {"out_dir", out_dir}});
  return 0;
}

int cmd_augment(const CorpusArgs& test, const std::string& patterns_path,
                const std::string& inventory_path, const std::string& manifest_path,
                std::uint64_t seed, const std::string& scores_path, std::size_t bucket_cap,
                std::size_t candidate_cap, bool no_abstract, unsigned threads,
                const std::string& out_dir, const std::string& vowels) {
  require_file(patterns_path, "pattern config");
  require_file(inventory_path, "inventory file");
  require_file(manifest_path, "manifest");

  const std::vector<PatternPair> patterns = load_patterns(patterns_path);
  const MorphemeInventory inventory = load_inventory(inventory_path);
  const Manifest manifest = load_manifest(manifest_path);
  const std::vector<AnnotatedSentencePair> test_pairs = load_corpus(test);

  BuildConfig config;
  config.seed = seed;
  config.abstract_variants = !no_abstract;
  config.threads = threads;
  config.vowels = VowelSet(vowels);

  // Originals re-derived exactly as the build run derived them.
  const std::vector<TestRecord> original_records =
      build_test_records(test_pairs, patterns, inventory, manifest, config);
  const std::size_t site_count =
      config.abstract_variants ? original_records.size() / 2 : original_records.size();
  std::vector<BalancedSite> originals;
  for (std::size_t i = 0; i < site_count; ++i) {
    BalancedSite site;
    site.surface = original_records[i];
    if (config.abstract_variants) site.abstract_rec = original_records[site_count + i];
    site.bucket = bucket_of(site.surface.base_train_freq);
    originals.push_back(std::move(site));
  }

  std::vector<AugCandidate> candidates;
  for (const AnnotatedSentencePair& pair : test_pairs) {
    for (AugCandidate& c : generate_candidates(pair, patterns)) {
      candidates.push_back(std::move(c));
    }
  }
  cap_candidates(candidates, candidate_cap, seed);

  std::map<std::string, ScoreEntry> scores;
  if (!scores_path.empty()) {
    require_file(scores_path, "score file");
    scores = load_scores(scores_path);
  } else {
    log_line("augment", {{"scorer", "builtin-unigram"}});
  }
  const UnigramScorer fallback(test_pairs);
  attach_scores(candidates, scores, &fallback);

  const std::vector<BalancedSite> augmented = realize_candidates(
      candidates, patterns, inventory, manifest, config.abstract_variants, config.vowels);
  const std::vector<BalancedSite> assembled = assemble_balanced(originals, augmented, bucket_cap);

  std::vector<TestRecord> records;
  std::vector<std::string> buckets;
  for (const BalancedSite& s : assembled) {
    records.push_back(s.surface);
    buckets.push_back(s.bucket);
  }
  if (config.abstract_variants) {
    for (const BalancedSite& s : assembled) {
      if (s.abstract_rec) {
        records.push_back(*s.abstract_rec);
        buckets.push_back(s.bucket);
      }
    }
  }

  fs::create_directories(out_dir);
  const fs::path out(out_dir);
  std::vector<std::string> src_lines;
  std::vector<std::string> trg_lines;
  for (const TestRecord& r : records) {
    src_lines.push_back(r.record.src_text);
    trg_lines.push_back(r.record.trg_text);
  }
  write_lines(src_lines, (out / "aug_test.src").string());
  write_lines(trg_lines, (out / "aug_test.trg").string());
  {
    std::ofstream meta((out / "aug_test.meta.tsv").string());
    if (!meta) throw ConfigError("cannot write augmented metadata");
    write_test_meta(records, meta, /*with_bucket=*/true, buckets);
  }
  log_line("augment", {{"originals", std::to_string(originals.size())},
                       {"candidates", std::to_string(candidates.size())},
                       {"realized", std::to_string(augmented.size())},
                       {"assembled", std::to_string(assembled.size())},
                       {"bucket_cap", std::to_string(bucket_cap)},
                       {"out_dir", out_dir}});
  return 0;
}

int cmd_report(const std::string& manifest_path, const std::string& report_path,
               const std::string& buckets_path, const std::string& errors_path) {
  if (!manifest_path.empty()) {
    require_file(manifest_path, "manifest");
    const Manifest manifest = load_manifest(manifest_path);
    std::printf("== manifest (seed=%llu, digest=%s) ==\n",
                static_cast<unsigned long long>(manifest.seed), manifest.config_digest.c_str());
    std::printf("%-20s %10s %10s %10s\n", "pattern", "train", "test", "skipped");
    for (const auto& [id, counts] : manifest.patterns) {
      std::printf("%-20s %10zu %10zu %10zu\n", id.c_str(), counts.train_count, counts.test_count,
                  counts.skipped_count);
    }
  }
  auto dump_tsv = [](const std::string& path, const char* title) {
    if (path.empty()) return;
    require_file(path, title);
    std::printf("== %s ==\n", title);
    for (const std::string& line : load_lines(path)) std::printf("%s\n", line.c_str());
  };
  dump_tsv(report_path, "accuracy report");
  dump_tsv(buckets_path, "bucket accuracies");
  dump_tsv(errors_path, "error classifications");
  return 0;
}

int cmd_gen_toy(std::size_t pairs, std::size_t test_pairs, std::uint64_t seed,
                const std::string& out_dir) {
  DemoOptions options;
  options.train_pairs = pairs;
  options.test_pairs = test_pairs;
  options.seed = seed;
  const DemoCorpus corpus = make_demo_corpus(options);
  fs::create_directories(out_dir);
  const fs::path out(out_dir);
  write_corpus_files(corpus.train, (out / "toy.train").string());
  write_corpus_files(corpus.test, (out / "toy.test").string());
  std::string vocab;
  for (const std::string& entry : corpus.vocab) {
    vocab += entry;
    vocab += '\n';
  }
  write_text_file((out / "toy.vocab.txt").string(), vocab);
  log_line("gen-toy", {{"train_pairs", std::to_string(pairs)},
                       {"test_pairs", std::to_string(test_pairs)},
                       {"seed", std::to_string(seed)},
                       {"out_dir", out_dir}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synmorph: synthetic morphology insertion and MT-output evaluation"};
  app.require_subcommand(1);

  // gen-morphemes
  auto* gen = app.add_subcommand("gen-morphemes", "Generate the artificial-morpheme inventory");
  std::string gen_patterns, gen_vocab, gen_out;
  std::vector<std::string> gen_conllu;
  std::uint64_t gen_seed = 0;
  std::string gen_src_vowels = "aeiouäöü";
  std::string gen_trg_vowels = "aeiou";
  std::string gen_consonants = "bcdfghjklmnpqrstvwxyz";
  gen->add_option("--patterns", gen_patterns, "pattern config TSV")->required();
  gen->add_option("--vocab", gen_vocab, "exclusion vocabulary, one entry per line");
  gen->add_option("--src-conllu", gen_conllu, "corpora to check absence against (repeatable)");
  gen->add_option("--trg-conllu", gen_conllu, "corpora to check absence against (repeatable)");
  gen->add_option("--seed", gen_seed, "generation seed")->required();
  gen->add_option("-o,--out", gen_out, "inventory output path")->required();
  gen->add_option("--src-vowels", gen_src_vowels, "source-side vowel alphabet");
  gen->add_option("--trg-vowels", gen_trg_vowels, "target-side vowel alphabet");
  gen->add_option("--consonants", gen_consonants, "consonant alphabet (both sides)");

  // build
  auto* build = app.add_subcommand("build", "Build augmented train and test corpora");
  CorpusArgs build_train;
  CorpusArgs build_test;
  std::string build_patterns, build_inventory, build_out;
  std::vector<std::string> build_caps;
  std::uint64_t build_seed = 0;
  bool build_no_abstract = false;
  bool build_dry_run = false;
  unsigned build_threads = default_threads();
  std::string build_vowels = "aeiouäöü";
  build->add_option("--src-conllu", build_train.src_conllu, "training source CoNLL-U")->required();
  build->add_option("--trg-conllu", build_train.trg_conllu, "training target CoNLL-U")->required();
  build->add_option("--align", build_train.align, "training alignment file")->required();
  build->add_option("--test-src-conllu", build_test.src_conllu, "test source CoNLL-U");
  build->add_option("--test-trg-conllu", build_test.trg_conllu, "test target CoNLL-U");
  build->add_option("--test-align", build_test.align, "test alignment file");
  build->add_option("--patterns", build_patterns, "pattern config TSV")->required();
  build->add_option("--inventory", build_inventory, "morpheme inventory TSV")->required();
  build->add_option("--seed", build_seed, "sampling seed")->required();
  build->add_option("--out-dir", build_out, "output directory")->required();
  build->add_option("--cap", build_caps, "PATTERN=N training cap override (repeatable)");
  build->add_flag("--no-abstract", build_no_abstract, "skip abstract-variant generation");
  build->add_option("--threads", build_threads, "worker threads");
  build->add_flag("--dry-run", build_dry_run, "print the manifest, write nothing");
  build->add_option("--vowels", build_vowels, "vowel alphabet for stem-vowel extraction");

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Score MT outputs against test metadata");
  std::string eval_outputs, eval_meta, eval_inventory, eval_patterns, eval_manifest, eval_vocab,
      eval_out;
  std::string eval_vowels = "aeiouäöü";
  eval->add_option("--outputs", eval_outputs, "system output, one sentence per line")->required();
  eval->add_option("--meta", eval_meta, "test.meta.tsv from build/augment")->required();
  eval->add_option("--inventory", eval_inventory, "morpheme inventory TSV")->required();
  eval->add_option("--patterns", eval_patterns, "pattern config TSV")->required();
  eval->add_option("--manifest", eval_manifest, "manifest for cross-checking");
  eval->add_option("--trg-vocab", eval_vocab, "target vocabulary for T5 detection");
  eval->add_option("--out-dir", eval_out, "output directory")->required();
  eval->add_option("--vowels", eval_vowels, "vowel alphabet");

  // augment
  auto* aug = app.add_subcommand("augment", "Assemble the frequency-balanced test set");
  CorpusArgs aug_test;
  std::string aug_patterns, aug_inventory, aug_manifest, aug_scores, aug_out;
  std::uint64_t aug_seed = 0;
  std::size_t aug_bucket_cap = 100;
  std::size_t aug_cand_cap = 50;
  bool aug_no_abstract = false;
  unsigned aug_threads = default_threads();
  std::string aug_vowels = "aeiouäöü";
  aug->add_option("--src-conllu", aug_test.src_conllu, "test source CoNLL-U")->required();
  aug->add_option("--trg-conllu", aug_test.trg_conllu, "test target CoNLL-U")->required();
  aug->add_option("--align", aug_test.align, "test alignment file")->required();
  aug->add_option("--patterns", aug_patterns, "pattern config TSV")->required();
  aug->add_option("--inventory", aug_inventory, "morpheme inventory TSV")->required();
  aug->add_option("--manifest", aug_manifest, "manifest from the build run")->required();
  aug->add_option("--seed", aug_seed, "sampling seed (use the build seed)")->required();
  aug->add_option("--scores", aug_scores, "candidate score file (candidate_id, src_delta, trg_delta)");
  aug->add_option("--bucket-cap", aug_bucket_cap, "sentences per (pattern, bucket)");
  aug->add_option("--candidate-cap", aug_cand_cap, "candidates kept per origin pair");
  aug->add_flag("--no-abstract", aug_no_abstract, "skip abstract-variant generation");
  aug->add_option("--threads", aug_threads, "worker threads");
  aug->add_option("--vowels", aug_vowels, "vowel alphabet");
  aug->add_option("--out-dir", aug_out, "output directory")->required();

  // report
  auto* rep = app.add_subcommand("report", "Pretty-print manifest and evaluation tables");
  std::string rep_manifest, rep_report, rep_buckets, rep_errors;
  rep->add_option("--manifest", rep_manifest, "manifest TSV");
  rep->add_option("--report", rep_report, "report.tsv");
  rep->add_option("--buckets", rep_buckets, "buckets.tsv");
  rep->add_option("--errors", rep_errors, "errors.tsv");

  // gen-toy
  auto* toy = app.add_subcommand("gen-toy", "Generate the bundled demo corpus");
  std::size_t toy_pairs = 5000;
  std::size_t toy_test_pairs = 600;
  std::uint64_t toy_seed = 1;
  std::string toy_out;
  toy->add_option("--pairs", toy_pairs, "training pairs");
  toy->add_option("--test-pairs", toy_test_pairs, "test pairs");
  toy->add_option("--seed", toy_seed, "generation seed");
  toy->add_option("--out-dir", toy_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_gen_morphemes(gen_patterns, gen_vocab, gen_conllu, gen_seed, gen_out,
                               gen_src_vowels, gen_trg_vowels, gen_consonants);
    }
    if (build->parsed()) {
      std::optional<CorpusArgs> test;
      const bool any_test = !build_test.src_conllu.empty() || !build_test.trg_conllu.empty() ||
                            !build_test.align.empty();
      const bool all_test = !build_test.src_conllu.empty() && !build_test.trg_conllu.empty() &&
                            !build_test.align.empty();
      if (any_test && !all_test) {
        throw ConfigError("--test-src-conllu, --test-trg-conllu and --test-align go together");
      }
      if (all_test) test = build_test;
      return cmd_build(build_train, test, build_patterns, build_inventory, build_seed, build_out,
                       build_caps, build_no_abstract, build_threads, build_dry_run, build_vowels);
    }
    if (eval->parsed()) {
      return cmd_evaluate(eval_outputs, eval_meta, eval_inventory, eval_patterns, eval_manifest,
                          eval_vocab, eval_out, eval_vowels);
    }
    if (aug->parsed()) {
      return cmd_augment(aug_test, aug_patterns, aug_inventory, aug_manifest, aug_seed, aug_scores,
                         aug_bucket_cap, aug_cand_cap, aug_no_abstract, aug_threads, aug_out,
                         aug_vowels);
    }
    if (rep->parsed()) {
      return cmd_report(rep_manifest, rep_report, rep_buckets, rep_errors);
    }
    if (toy->parsed()) {
      return cmd_gen_toy(toy_pairs, toy_test_pairs, toy_seed, toy_out);
    }
  } catch (const Error& e) {
    log_line("error", {{"message", e.what()}});
    return 2;
  } catch (const std::exception& e) {
    log_line("error", {{"message", e.what()}});
    return 1;
  }
  return 0;
}

// Copyright 2026 The svprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svprep/pipeline.hpp"

#include <algorithm>
#include <iostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "svprep/evalkit.hpp"
#include "svprep/lexicon.hpp"
#include "svprep/ocrfix.hpp"
#include "svprep/parallel.hpp"
#include "svprep/pretrain.hpp"
#include "svprep/unicode.hpp"
#include "svprep/util.hpp"
#include "svprep/vocab.hpp"

namespace svprep::pipeline {

namespace fs = std::filesystem;

fs::path PipelineConfig::out_path(const std::string& name) const {
  return fs::path(out_dir) / name;
}

std::string PipelineConfig::segments_path() const {
  return segments.empty() ? out_path("segments.txt").string() : segments;
}

std::string PipelineConfig::vocab_path() const {
  return vocab_file.empty() ? out_path("vocab.txt").string() : vocab_file;
}

std::string PipelineConfig::merges_path() const {
  return merges_file.empty() ? out_path("merges.txt").string() : merges_file;
}

namespace {

void progress(const std::string& message) { std::cerr << message << '\n'; }

void ensure_parent(const fs::path& path) {
  fs::path dir = path.parent_path();
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw stage_error("cannot create directory " + dir.string() + ": " +
                      ec.message());
}

void write_artifact(RunRecord& record, const fs::path& path,
                    std::string_view content) {
  ensure_parent(path);
  util::write_file(path, content);
  record.artifacts.push_back(path);
}

fs::path require_input(RunRecord& record, const std::string& path,
                       const std::string& what) {
  if (path.empty()) throw config_error(what + " path is not configured");
  fs::path p(path);
  if (!fs::exists(p))
    throw config_error(what + " not found: " + path);
  record.inputs.push_back(p);
  return p;
}

struct LoadedCorpus {
  std::vector<ingest::RawDocument> docs;
  std::uint64_t skipped = 0;
};

LoadedCorpus load_corpus(const std::vector<ingest::SourceSpec>& specs,
                         RunRecord& record) {
  LoadedCorpus corpus;
  for (const auto& spec : specs) {
    for (const auto& file : ingest::list_source_files(spec))
      record.inputs.push_back(file);
    auto [docs, report] = ingest::load_all(spec);
    corpus.skipped += report.skipped.size();
    for (const auto& skip : report.skipped)
      progress("skipped " + skip.id + ": " + skip.reason);
    for (auto& doc : docs) corpus.docs.push_back(std::move(doc));
  }
  if (corpus.docs.empty())
    throw stage_error("configured corpora contain no documents");
  return corpus;
}

}  // namespace

std::vector<ingest::SourceSpec> corpus_specs(
    const std::vector<std::string>& corpora) {
  if (corpora.empty()) throw config_error("no corpus paths configured");
  std::vector<ingest::SourceSpec> specs;
  for (const auto& entry : corpora) {
    ingest::SourceTag tag = ingest::SourceTag::other;
    std::string path_part = entry;
    std::size_t colon = entry.find(':');
    if (colon != std::string::npos && colon > 0) {
      try {
        tag = ingest::parse_source_tag(entry.substr(0, colon));
        path_part = entry.substr(colon + 1);
      } catch (const config_error&) {
        // No tag prefix; the whole entry is a path.
      }
    }
    if (path_part.empty())
      throw config_error("corpus entry has no path: " + entry);
    fs::path path(path_part);
    if (!fs::exists(path))
      throw config_error("corpus path not found: " + path_part);
    if (fs::is_directory(path)) {
      specs.push_back({path, tag, ingest::SourceFormat::plain});
      specs.push_back({path, tag, ingest::SourceFormat::records});
    } else {
      ingest::SourceFormat format = path.extension() == ".docs"
                                        ? ingest::SourceFormat::records
                                        : ingest::SourceFormat::plain;
      specs.push_back({path, tag, format});
    }
  }
  return specs;
}

segment::SegmenterConfig segmenter_config(const PipelineConfig& config) {
  segment::SegmenterConfig sc;
  if (config.min_sentences < 1)
    throw config_error("min_sentences must be at least 1");
  sc.min_sentences = config.min_sentences;
  sc.emoji_as_delimiter = config.emoji_delimiter;
  if (!config.abbrev_file.empty()) {
    fs::path path(config.abbrev_file);
    if (!fs::exists(path))
      throw config_error("abbreviation file not found: " + config.abbrev_file);
    sc.abbreviations.clear();
    for (const auto& line : util::read_lines(path)) {
      std::string entry(util::trim(line));
      if (entry.empty() || entry[0] == '#') continue;
      entry = uni::fold_case(entry);
      if (entry.back() != '.') entry.push_back('.');
      sc.abbreviations.insert(entry);
    }
  }
  return sc;
}

void run_stats(const PipelineConfig& config, RunRecord& record) {
  record.stage = "stats";
  std::vector<ingest::SourceSpec> specs = corpus_specs(config.corpora);
  segment::SegmenterConfig segcfg = segmenter_config(config);
  if (!config.abbrev_file.empty())
    record.inputs.push_back(config.abbrev_file);
  LoadedCorpus corpus = load_corpus(specs, record);

  std::vector<ingest::Counters> counters = parallel_map(
      corpus.docs, config.workers, [&](const ingest::RawDocument& doc) {
        return ingest::count_document(doc, segcfg);
      });
  ingest::CorpusStats stats;
  for (std::size_t i = 0; i < corpus.docs.size(); ++i)
    stats.per_source[corpus.docs[i].source_tag] += counters[i];

  std::string table = ingest::format_stats_table(stats);
  std::cout << table;
  write_artifact(record, config.out_path("stats.txt"), table);
  write_artifact(record, config.out_path("stats.jsonl"),
                 ingest::format_stats_records(stats));
  progress("stats: " + std::to_string(corpus.docs.size()) + " documents, " +
           std::to_string(corpus.skipped) + " skipped");
}

void run_fix_ocr(const PipelineConfig& config, RunRecord& record) {
  record.stage = "fix-ocr";
  fs::path lexicon_path = require_input(record, config.lexicon, "lexicon");
  Lexicon lexicon = Lexicon::load(lexicon_path);
  std::vector<ocrfix::CorrectionEntry> overrides;
  if (!config.overrides.empty()) {
    fs::path p = require_input(record, config.overrides, "override file");
    overrides = ocrfix::load_overrides(p);
  }
  std::vector<ingest::SourceSpec> specs = corpus_specs(config.corpora);

  // Pass 1: fold-level token frequencies over the whole corpus.
  struct FileJob {
    ingest::SourceSpec spec;
    fs::path relative;
  };
  std::vector<FileJob> jobs;
  for (const auto& spec : specs) {
    for (const auto& file : ingest::list_source_files(spec)) {
      record.inputs.push_back(file);
      fs::path rel = fs::is_directory(spec.path)
                         ? fs::relative(file, spec.path)
                         : file.filename();
      jobs.push_back({{file, spec.tag, spec.format}, rel});
    }
  }
  if (jobs.empty()) throw stage_error("configured corpora contain no files");

  std::vector<ocrfix::TokenFreqs> per_file = parallel_map(
      jobs, config.workers, [&](const FileJob& job) {
        ocrfix::TokenFreqs freqs;
        ingest::load_documents(job.spec, [&](ingest::RawDocument&& doc) {
          ocrfix::count_tokens(doc.text, freqs);
        });
        return freqs;
      });
  ocrfix::TokenFreqs freqs;
  for (const auto& f : per_file)
    for (const auto& [token, count] : f) freqs[token] += count;

  ocrfix::BuildOptions options;
  options.min_freq = config.min_freq;
  options.max_sites = config.max_sites;
  ocrfix::BuildResult built =
      ocrfix::build_correction_map(freqs, lexicon, overrides, options);
  for (const auto& warning : built.warnings) progress("fix-ocr: " + warning);
  write_artifact(record, config.out_path("corrections.tsv"),
                 built.map.save());

  // Pass 2: rewrite every file under <out>/fixed with its layout intact.
  fs::path fixed_root = config.out_path("fixed");
  std::vector<fs::path> outputs(jobs.size());
  std::vector<ocrfix::CorrectionReport> reports(jobs.size());
  std::vector<std::uint64_t> skipped(jobs.size(), 0);
  parallel_for(jobs.size(), config.workers, [&](std::size_t i) {
    const FileJob& job = jobs[i];
    fs::path out_file =
        fixed_root / ingest::to_string(job.spec.tag) / job.relative;
    std::string content;
    ingest::LoadReport load_report =
        ingest::load_documents(job.spec, [&](ingest::RawDocument&& doc) {
          content += ocrfix::apply_corrections(doc.text, built.map,
                                               &reports[i]);
          if (job.spec.format == ingest::SourceFormat::records)
            content.push_back('\n');
        });
    skipped[i] = load_report.skipped.size();
    ensure_parent(out_file);
    util::write_file(out_file, content);
    outputs[i] = out_file;
  });

  ocrfix::CorrectionReport report;
  std::uint64_t records_skipped = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    record.artifacts.push_back(outputs[i]);
    report += reports[i];
    records_skipped += skipped[i];
  }

  std::ostringstream summary;
  summary << "map entries          " << built.map.size() << '\n'
          << "candidates           " << built.candidates_considered << '\n'
          << "ambiguous dropped    " << built.ambiguous_dropped << '\n'
          << "occurrences fixed    " << report.occurrences_corrected << '\n'
          << "records skipped      " << records_skipped << '\n';
  struct EntryCount {
    std::string wrong;
    std::uint64_t count;
  };
  std::vector<EntryCount> top;
  for (const auto& [wrong, count] : report.per_entry)
    top.push_back({wrong, count});
  std::sort(top.begin(), top.end(), [](const EntryCount& a,
                                       const EntryCount& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.wrong < b.wrong;
  });
  if (top.size() > 50) top.resize(50);
  if (!top.empty()) summary << "most frequent corrections\n";
  for (const auto& e : top)
    summary << "  " << e.wrong << "  " << e.count << '\n';
  for (const auto& warning : built.warnings)
    summary << "warning: " << warning << '\n';
  write_artifact(record, config.out_path("fix_report.txt"),
                 std::move(summary).str());
  progress("fix-ocr: " + std::to_string(built.map.size()) + " entries, " +
           std::to_string(report.occurrences_corrected) +
           " occurrences corrected");
}

void run_segment(const PipelineConfig& config, RunRecord& record) {
  record.stage = "segment";
  std::vector<ingest::SourceSpec> specs = corpus_specs(config.corpora);
  segment::SegmenterConfig segcfg = segmenter_config(config);
  if (!config.abbrev_file.empty())
    record.inputs.push_back(config.abbrev_file);
  Lexicon lexicon;
  if (!config.lexicon.empty()) {
    fs::path p = require_input(record, config.lexicon, "lexicon");
    lexicon = Lexicon::load(p);
  }
  LoadedCorpus corpus = load_corpus(specs, record);

  using Block = std::pair<std::string, std::vector<segment::Sentence>>;
  std::vector<Block> blocks = parallel_map(
      corpus.docs, config.workers, [&](const ingest::RawDocument& doc) {
        std::vector<std::string> lines;
        for (auto line : util::split(doc.text, '\n'))
          lines.emplace_back(line);
        std::string text = segment::dehyphenate(lines, lexicon);
        return Block{doc.id, segment::split_sentences(text, segcfg)};
      });

  segment::ParagraphStats pstats;
  std::vector<segment::Paragraph> paragraphs =
      segment::build_paragraphs(blocks, segcfg, &pstats);
  write_artifact(record, config.segments_path(),
                 segment::format_paragraphs(paragraphs));
  progress("segment: kept " + std::to_string(pstats.sentences_kept) + " of " +
           std::to_string(pstats.sentences_seen) + " sentences in " +
           std::to_string(paragraphs.size()) + " paragraphs (" +
           std::to_string(pstats.blocks_discarded) + " blocks discarded)");
}

void run_build_vocab(const PipelineConfig& config, RunRecord& record) {
  record.stage = "build-vocab";
  fs::path segments = require_input(record, config.segments_path(),
                                    "segments file");
  std::vector<std::vector<std::string>> paragraphs =
      segment::parse_paragraph_file(util::read_file(segments));
  std::vector<std::string> sentences;
  for (auto& paragraph : paragraphs)
    for (auto& sentence : paragraph) sentences.push_back(std::move(sentence));

  vocab::TrainerConfig tc;
  tc.target_size = config.target_size;
  tc.min_pair_freq = config.min_pair_freq;
  vocab::SubwordVocab trained = vocab::train_vocab(sentences, tc);

  std::vector<std::string> inject;
  if (config.default_emoji) inject = vocab::default_emoji_tokens();
  if (!config.inject_file.empty()) {
    fs::path p = require_input(record, config.inject_file, "injection file");
    for (const auto& line : util::read_lines(p)) {
      std::string token(util::trim(line));
      if (!token.empty() && token[0] != '#') inject.push_back(token);
    }
  }
  std::vector<std::string> log;
  vocab::SubwordVocab final_vocab =
      vocab::inject_special_tokens(trained, inject, false, &log);

  fs::path vocab_out(config.vocab_path());
  fs::path merges_out(config.merges_path());
  write_artifact(record, vocab_out, final_vocab.save_vocab());
  write_artifact(record, merges_out, final_vocab.save_merges());
  progress("build-vocab: " + std::to_string(trained.size()) +
           " trained tokens, " +
           std::to_string(final_vocab.size() - trained.size()) +
           " injected, " + std::to_string(final_vocab.merges().size()) +
           " merges");
}

void run_make_data(const PipelineConfig& config, RunRecord& record) {
  record.stage = "make-data";
  fs::path segments = require_input(record, config.segments_path(),
                                    "segments file");
  fs::path vocab_in = require_input(record, config.vocab_path(),
                                    "vocabulary file");
  fs::path merges_in = require_input(record, config.merges_path(),
                                     "merge file");
  std::vector<std::vector<std::string>> documents =
      segment::parse_paragraph_file(util::read_file(segments));
  vocab::SubwordVocab v = vocab::SubwordVocab::load_files(vocab_in, merges_in);

  pretrain::MaskingConfig mc;
  mc.max_seq_len = config.max_seq_len;
  mc.mask_fraction = config.mask_fraction;
  mc.mask_token_prob = config.mask_token_prob;
  mc.random_token_prob = config.random_token_prob;
  mc.keep_token_prob = config.keep_token_prob;
  mc.dupe_factor = config.dupe_factor;
  mc.short_seq_prob = config.short_seq_prob;
  mc.seed = config.seed;

  pretrain::PretrainReport report;
  std::vector<pretrain::PretrainInstance> instances =
      pretrain::create_instances(documents, v, mc, &report, config.workers);
  write_artifact(record, config.out_path("instances.jsonl"),
                 pretrain::serialize_instances(instances));
  write_artifact(record, config.out_path("pretrain_report.txt"),
                 pretrain::format_report(report));
  progress("make-data: " + std::to_string(instances.size()) +
           " instances from " + std::to_string(report.documents) +
           " documents (" + std::to_string(report.skipped_paragraphs) +
           " skipped)");
}

namespace {

evalkit::LoadOptions load_options(const PipelineConfig& config,
                                  const std::string& scheme) {
  evalkit::LoadOptions options;
  if (scheme == "bio") {
    options.scheme = evalkit::Scheme::bio;
  } else if (scheme == "plain") {
    options.scheme = evalkit::Scheme::plain;
  } else {
    throw config_error("scheme must be 'bio' or 'plain', got '" + scheme +
                       "'");
  }
  options.strict = config.strict;
  return options;
}

}  // namespace

void run_split(const PipelineConfig& config, RunRecord& record) {
  record.stage = "split";
  fs::path input = require_input(record, config.input, "input file");
  std::vector<evalkit::TaggedSequence> sequences =
      evalkit::load_tagged_file(input, load_options(config, config.scheme));
  evalkit::SplitSpec spec;
  spec.train_ratio = config.train_ratio;
  spec.test_ratio = config.test_ratio;
  spec.eval_ratio = config.eval_ratio;
  spec.seed = config.seed;
  evalkit::SplitResult result = evalkit::split_dataset(sequences, spec);
  write_artifact(record, config.out_path("train.tsv"),
                 evalkit::format_tagged(result.train));
  write_artifact(record, config.out_path("test.tsv"),
                 evalkit::format_tagged(result.test));
  write_artifact(record, config.out_path("eval.tsv"),
                 evalkit::format_tagged(result.eval));
  progress("split: " + std::to_string(result.train.size()) + "/" +
           std::to_string(result.test.size()) + "/" +
           std::to_string(result.eval.size()) + " sequences");
}

void run_score(const PipelineConfig& config, RunRecord& record) {
  record.stage = "score";
  if (config.task != "ner" && config.task != "pos")
    throw config_error("task must be 'ner' or 'pos', got '" + config.task +
                       "'");
  bool ner = config.task == "ner";
  evalkit::LoadOptions options =
      load_options(config, ner ? "bio" : "plain");
  fs::path gold_path = require_input(record, config.input, "gold file");
  std::vector<evalkit::TaggedSequence> gold, pred;
  if (config.pred.empty()) {
    evalkit::GoldPred gp =
        evalkit::parse_tagged_pair(util::read_file(gold_path), options);
    gold = std::move(gp.gold);
    pred = std::move(gp.pred);
  } else {
    fs::path pred_path = require_input(record, config.pred,
                                       "prediction file");
    gold = evalkit::load_tagged_file(gold_path, options);
    pred = evalkit::load_tagged_file(pred_path, options);
  }
  evalkit::Averaging avg =
      ner ? evalkit::Averaging::micro : evalkit::Averaging::weighted;
  if (config.avg == "micro") {
    avg = evalkit::Averaging::micro;
  } else if (config.avg == "weighted") {
    avg = evalkit::Averaging::weighted;
  } else if (!config.avg.empty()) {
    throw config_error("avg must be 'micro' or 'weighted', got '" +
                       config.avg + "'");
  }
  evalkit::EvalReport report = ner ? evalkit::score_ner(gold, pred, avg)
                                   : evalkit::score_pos(gold, pred, avg);
  std::string table = evalkit::format_report(report);
  std::cout << table;
  write_artifact(record, config.out_path("score.txt"), table);
  write_artifact(record, config.out_path("score.json"),
                 evalkit::report_to_json(report));
}

void run_curve(const PipelineConfig& config, RunRecord& record) {
  record.stage = "curve";
  fs::path input = require_input(record, config.input, "input file");
  std::vector<std::pair<std::uint64_t, double>> values;
  std::size_t lineno = 0;
  for (const auto& line : util::read_lines(input)) {
    ++lineno;
    if (util::trim(line).empty()) continue;
    auto fields = util::split_ws(line);
    if (fields.size() != 2)
      throw stage_error("curve input line " + std::to_string(lineno) +
                        ": expected 'steps<TAB>FB1'");
    try {
      values.emplace_back(std::stoull(fields[0]), std::stod(fields[1]));
    } catch (const std::exception&) {
      throw stage_error("curve input line " + std::to_string(lineno) +
                        ": malformed number");
    }
  }
  std::string table = evalkit::checkpoint_curve(values);
  std::cout << table;
  write_artifact(record, config.out_path("curve.txt"), table);
}

void run_pipeline(const PipelineConfig& config, RunRecord& record) {
  run_stats(config, record);
  run_fix_ocr(config, record);

  PipelineConfig seg = config;
  seg.corpora.clear();
  fs::path fixed_root = config.out_path("fixed");
  std::vector<std::string> tags;
  for (const auto& entry : fs::directory_iterator(fixed_root))
    if (entry.is_directory())
      tags.push_back(entry.path().filename().string());
  std::sort(tags.begin(), tags.end());
  for (const auto& tag : tags)
    seg.corpora.push_back(tag + ":" + (fixed_root / tag).string());
  if (seg.corpora.empty())
    throw stage_error("fix-ocr produced no corrected corpus directories");
  run_segment(seg, record);

  run_build_vocab(config, record);
  run_make_data(config, record);
  record.stage = "pipeline";
}

namespace {

nlohmann::json config_json(const PipelineConfig& c) {
  nlohmann::json j;
  j["corpus"] = c.corpora;
  j["lexicon"] = c.lexicon;
  j["overrides"] = c.overrides;
  j["out"] = c.out_dir;
  j["segments"] = c.segments_path();
  j["vocab"] = c.vocab_path();
  j["merges"] = c.merges_path();
  j["min_freq"] = c.min_freq;
  j["max_sites"] = c.max_sites;
  j["min_sentences"] = c.min_sentences;
  j["abbrev"] = c.abbrev_file;
  j["emoji_delimiter"] = c.emoji_delimiter;
  j["target_size"] = c.target_size;
  j["min_pair_freq"] = c.min_pair_freq;
  j["inject"] = c.inject_file;
  j["default_emoji"] = c.default_emoji;
  j["max_seq_len"] = c.max_seq_len;
  j["mask_fraction"] = c.mask_fraction;
  j["mask_token_prob"] = c.mask_token_prob;
  j["random_token_prob"] = c.random_token_prob;
  j["keep_token_prob"] = c.keep_token_prob;
  j["dupe_factor"] = c.dupe_factor;
  j["short_seq_prob"] = c.short_seq_prob;
  j["train_ratio"] = c.train_ratio;
  j["test_ratio"] = c.test_ratio;
  j["eval_ratio"] = c.eval_ratio;
  j["scheme"] = c.scheme;
  j["strict"] = c.strict;
  j["input"] = c.input;
  j["pred"] = c.pred;
  j["task"] = c.task;
  j["avg"] = c.avg;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  return j;
}

nlohmann::json file_entry(const fs::path& path) {
  nlohmann::json j;
  j["path"] = path.generic_string();
  std::error_code ec;
  if (fs::exists(path, ec) && !fs::is_directory(path, ec)) {
    j["digest"] = util::digest_file(path);
  } else {
    j["digest"] = "missing";
  }
  return j;
}

}  // namespace

void write_manifest(const PipelineConfig& config, const RunRecord& record,
                    const std::string& status) {
  nlohmann::json manifest;
  manifest["command"] = record.command;
  manifest["status"] = status;
  if (status != "ok") manifest["failed_stage"] = record.stage;
  manifest["seed"] = config.seed;
  manifest["config"] = config_json(config);

  auto listed = [](const std::vector<fs::path>& paths, bool partial) {
    nlohmann::json arr = nlohmann::json::array();
    std::set<std::string> seen;
    for (const auto& path : paths) {
      if (!seen.insert(path.generic_string()).second) continue;
      nlohmann::json entry = file_entry(path);
      if (partial) entry["partial"] = true;
      arr.push_back(std::move(entry));
    }
    return arr;
  };
  manifest["inputs"] = listed(record.inputs, false);
  manifest["artifacts"] = listed(record.artifacts, status != "ok");

  fs::path path = config.out_path("manifest.json");
  ensure_parent(path);
  util::write_file(path, manifest.dump(2) + "\n");
}

}  // namespace svprep::pipeline

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

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "svprep/pipeline.hpp"
#include "svprep/util.hpp"

namespace {

using svprep::pipeline::PipelineConfig;
using svprep::pipeline::RunRecord;

void add_common(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--out", cfg.out_dir, "Output directory")
      ->capture_default_str();
  cmd->add_option("--workers", cfg.workers, "Worker threads")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Seed for every stochastic stage")
      ->capture_default_str();
}

void add_corpus(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--corpus", cfg.corpora,
                  "Corpus file or directory, optionally prefixed 'tag:' "
                  "(news, sou, edeposit, social, wiki, other)")
      ->required();
}

void add_segmenter(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--min-sentences", cfg.min_sentences,
                  "Minimum sentences per kept paragraph")
      ->capture_default_str();
  cmd->add_option("--abbrev", cfg.abbrev_file,
                  "Abbreviation list replacing the stock one");
  cmd->add_flag("--emoji-delimiter,!--no-emoji-delimiter",
                cfg.emoji_delimiter,
                "Let emoji runs end sentences before an uppercase letter");
}

void add_fix(CLI::App* cmd, PipelineConfig& cfg, bool lexicon_required) {
  auto* lex = cmd->add_option("--lexicon", cfg.lexicon,
                              "Word-form lexicon, one form per line");
  if (lexicon_required) lex->required();
  cmd->add_option("--overrides", cfg.overrides,
                  "Manual corrections, wrong<TAB>correct per line");
  cmd->add_option("--min-freq", cfg.min_freq,
                  "Minimum corpus frequency for an automatic entry")
      ->capture_default_str();
  cmd->add_option("--max-sites", cfg.max_sites,
                  "Maximum rn/m substitution sites per candidate")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();
}

void add_vocab(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--segments", cfg.segments,
                  "Segmented corpus (defaults to <out>/segments.txt)");
  cmd->add_option("--vocab", cfg.vocab_file,
                  "Vocabulary file (defaults to <out>/vocab.txt)");
  cmd->add_option("--merges", cfg.merges_file,
                  "Merge file (defaults to <out>/merges.txt)");
}

void add_trainer(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--target-size", cfg.target_size,
                  "Subword vocabulary size to train toward")
      ->capture_default_str();
  cmd->add_option("--min-pair-freq", cfg.min_pair_freq,
                  "Stop merging below this pair frequency")
      ->capture_default_str();
  cmd->add_option("--inject", cfg.inject_file,
                  "Extra tokens to inject, one per line");
  cmd->add_flag("--default-emoji,!--no-default-emoji", cfg.default_emoji,
                "Inject the stock emoji and skin-tone token set");
}

void add_masking(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--max-seq-len", cfg.max_seq_len,
                  "Maximum packed instance length")
      ->capture_default_str();
  cmd->add_option("--mask-fraction", cfg.mask_fraction,
                  "Fraction of positions to mask")
      ->capture_default_str();
  cmd->add_option("--mask-token-prob", cfg.mask_token_prob,
                  "Masked position becomes [MASK]")
      ->capture_default_str();
  cmd->add_option("--random-token-prob", cfg.random_token_prob,
                  "Masked position becomes a random token")
      ->capture_default_str();
  cmd->add_option("--keep-token-prob", cfg.keep_token_prob,
                  "Masked position keeps its token")
      ->capture_default_str();
  cmd->add_option("--dupe-factor", cfg.dupe_factor,
                  "Independent masking passes over the corpus")
      ->capture_default_str();
  cmd->add_option("--short-seq-prob", cfg.short_seq_prob,
                  "Probability of a shortened target length")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "svprep: corpus preparation for masked-LM pretraining. Cleans OCR "
      "text against a lexicon, segments it into sentences and paragraphs, "
      "trains a subword vocabulary, packs masked training instances, and "
      "scores tagging output."};
  app.set_config("--config", "",
                 "INI config file; sections match subcommand names")
      ->envname("SVPREP_CONFIG");
  // Lets --config appear after the subcommand name.
  app.fallthrough();
  app.require_subcommand(1);

  PipelineConfig cfg;

  CLI::App* stats =
      app.add_subcommand("stats", "Word, sentence and size statistics");
  add_corpus(stats, cfg);
  add_segmenter(stats, cfg);
  add_common(stats, cfg);

  CLI::App* fix = app.add_subcommand(
      "fix-ocr", "Build a correction map and rewrite the corpus");
  add_corpus(fix, cfg);
  add_fix(fix, cfg, true);
  add_common(fix, cfg);

  CLI::App* seg = app.add_subcommand(
      "segment", "Split the corpus into sentences and paragraphs");
  add_corpus(seg, cfg);
  add_fix(seg, cfg, false);
  add_segmenter(seg, cfg);
  seg->add_option("--segments", cfg.segments,
                  "Output file (defaults to <out>/segments.txt)");
  add_common(seg, cfg);

  CLI::App* vocab =
      app.add_subcommand("build-vocab", "Train the subword vocabulary");
  add_vocab(vocab, cfg);
  add_trainer(vocab, cfg);
  add_common(vocab, cfg);

  CLI::App* make =
      app.add_subcommand("make-data", "Create masked pretraining instances");
  add_vocab(make, cfg);
  add_masking(make, cfg);
  add_common(make, cfg);

  CLI::App* split =
      app.add_subcommand("split", "Shuffle and split a tagged dataset");
  split->add_option("--input", cfg.input, "Tagged sequences (CoNLL-style)")
      ->required();
  split->add_option("--scheme", cfg.scheme, "Tagging scheme: bio or plain")
      ->capture_default_str();
  split->add_flag("--strict", cfg.strict, "Reject malformed BIO input");
  split->add_option("--train-ratio", cfg.train_ratio, "Training share")
      ->capture_default_str();
  split->add_option("--test-ratio", cfg.test_ratio, "Test share")
      ->capture_default_str();
  split->add_option("--eval-ratio", cfg.eval_ratio, "Evaluation share")
      ->capture_default_str();
  add_common(split, cfg);

  CLI::App* score =
      app.add_subcommand("score", "Entity or token F1 against gold tags");
  score->add_option("--gold", cfg.input,
                    "Gold file; surface<TAB>tag, or with a third prediction "
                    "column")
      ->required();
  score->add_option("--pred", cfg.pred, "Prediction file (two columns)");
  score->add_option("--task", cfg.task, "ner (entity level) or pos (token)")
      ->capture_default_str();
  score->add_option("--avg", cfg.avg,
                    "AVG row: micro or weighted (default by task)");
  score->add_flag("--strict", cfg.strict, "Reject malformed BIO input");
  add_common(score, cfg);

  CLI::App* curve = app.add_subcommand(
      "curve", "Checkpoint curve table from steps and FB1 values");
  curve->add_option("--input", cfg.input, "Lines of step<TAB>FB1")
      ->required();
  add_common(curve, cfg);

  CLI::App* pipe = app.add_subcommand(
      "pipeline", "stats, fix-ocr, segment, build-vocab, make-data");
  add_corpus(pipe, cfg);
  add_fix(pipe, cfg, true);
  add_segmenter(pipe, cfg);
  add_vocab(pipe, cfg);
  add_trainer(pipe, cfg);
  add_masking(pipe, cfg);
  add_common(pipe, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  struct Entry {
    CLI::App* cmd;
    const char* name;
    void (*fn)(const PipelineConfig&, RunRecord&);
  };
  const Entry entries[] = {
      {stats, "stats", svprep::pipeline::run_stats},
      {fix, "fix-ocr", svprep::pipeline::run_fix_ocr},
      {seg, "segment", svprep::pipeline::run_segment},
      {vocab, "build-vocab", svprep::pipeline::run_build_vocab},
      {make, "make-data", svprep::pipeline::run_make_data},
      {split, "split", svprep::pipeline::run_split},
      {score, "score", svprep::pipeline::run_score},
      {curve, "curve", svprep::pipeline::run_curve},
      {pipe, "pipeline", svprep::pipeline::run_pipeline},
  };

  RunRecord record;
  const Entry* chosen = nullptr;
  for (const Entry& entry : entries) {
    if (entry.cmd->parsed()) {
      chosen = &entry;
      break;
    }
  }
  if (chosen == nullptr) {
    std::cerr << "no subcommand selected\n";
    return 2;
  }
  record.command = chosen->name;
  record.stage = chosen->name;

  try {
    chosen->fn(cfg, record);
    svprep::pipeline::write_manifest(cfg, record, "ok");
  } catch (const svprep::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const svprep::stage_error& e) {
    std::cerr << "error [" << record.stage << "]: " << e.what() << '\n';
    try {
      svprep::pipeline::write_manifest(cfg, record, "failed");
    } catch (...) {
      std::cerr << "could not write the failure manifest\n";
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error [" << record.stage << "]: " << e.what() << '\n';
    try {
      svprep::pipeline::write_manifest(cfg, record, "failed");
    } catch (...) {
      std::cerr << "could not write the failure manifest\n";
    }
    return 1;
  }
  return 0;
}

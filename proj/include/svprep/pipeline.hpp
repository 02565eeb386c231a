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

#ifndef SVPREP_PIPELINE_HPP_
#define SVPREP_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "svprep/ingest.hpp"
#include "svprep/segment.hpp"

namespace svprep::pipeline {

/// Effective settings for every stage. Subcommands bind flags onto the
/// fields they use; the whole struct lands in the run manifest.
struct PipelineConfig {
  // Inputs and outputs.
  std::vector<std::string> corpora;  // "[tag:]path", directory or file
  std::string lexicon;
  std::string overrides;
  std::string out_dir = "out";
  std::string segments;     // defaults to <out>/segments.txt
  std::string vocab_file;   // defaults to <out>/vocab.txt
  std::string merges_file;  // defaults to <out>/merges.txt

  // OCR correction.
  std::uint64_t min_freq = 2;
  int max_sites = 2;

  // Segmenter.
  int min_sentences = 10;
  std::string abbrev_file;  // empty keeps the stock list
  bool emoji_delimiter = true;

  // Vocabulary trainer.
  std::uint64_t target_size = 50000;
  std::uint64_t min_pair_freq = 2;
  std::string inject_file;
  bool default_emoji = true;

  // Pretraining data.
  int max_seq_len = 128;
  double mask_fraction = 0.15;
  double mask_token_prob = 0.8;
  double random_token_prob = 0.1;
  double keep_token_prob = 0.1;
  int dupe_factor = 10;
  double short_seq_prob = 0.1;

  // Dataset split.
  double train_ratio = 0.70;
  double test_ratio = 0.20;
  double eval_ratio = 0.10;
  std::string scheme = "bio";
  bool strict = false;

  // Scoring and curves.
  std::string input;  // split/curve input file, score gold file
  std::string pred;   // score prediction file; empty reads a 3-column gold
  std::string task = "ner";
  std::string avg;  // "", "micro" or "weighted" (empty uses the task default)

  // Global.
  std::uint64_t seed = 0;
  int workers = 1;

  std::filesystem::path out_path(const std::string& name) const;
  std::string segments_path() const;
  std::string vocab_path() const;
  std::string merges_path() const;
};

/// What a run touched, for the manifest. Stage runners append inputs and
/// artifacts as they use or write them, so a failed run still reports the
/// partial artifact set.
struct RunRecord {
  std::string command;
  std::string stage;  // last stage started
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> artifacts;
};

/// Expands "[tag:]path" entries. Directories yield one spec per source
/// format; files pick their format from the extension. Missing paths are
/// config errors.
std::vector<ingest::SourceSpec> corpus_specs(
    const std::vector<std::string>& corpora);

/// Segmenter settings from the config, loading the abbreviation file when
/// one is set.
segment::SegmenterConfig segmenter_config(const PipelineConfig& config);

void run_stats(const PipelineConfig& config, RunRecord& record);
void run_fix_ocr(const PipelineConfig& config, RunRecord& record);
void run_segment(const PipelineConfig& config, RunRecord& record);
void run_build_vocab(const PipelineConfig& config, RunRecord& record);
void run_make_data(const PipelineConfig& config, RunRecord& record);
void run_split(const PipelineConfig& config, RunRecord& record);
void run_score(const PipelineConfig& config, RunRecord& record);
void run_curve(const PipelineConfig& config, RunRecord& record);

/// stats, fix-ocr, segment, build-vocab and make-data in sequence; the
/// segmenter consumes the corrected corpus under <out>/fixed.
void run_pipeline(const PipelineConfig& config, RunRecord& record);

/// <out>/manifest.json: command, status, seed, effective config, and input
/// and artifact digests. status is "ok" or "failed"; failed runs flag their
/// artifacts as partial.
void write_manifest(const PipelineConfig& config, const RunRecord& record,
                    const std::string& status);

}  // namespace svprep::pipeline

#endif  // SVPREP_PIPELINE_HPP_

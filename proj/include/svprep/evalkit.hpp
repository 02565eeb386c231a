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

#ifndef SVPREP_EVALKIT_HPP_
#define SVPREP_EVALKIT_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace svprep::evalkit {

enum class Scheme { bio, plain };

struct TaggedToken {
  std::string surface;
  std::string tag;

  bool operator==(const TaggedToken& other) const = default;
};

struct TaggedSequence {
  std::vector<TaggedToken> tokens;

  bool operator==(const TaggedSequence& other) const = default;
};

/// Relabels I-X tokens lacking a same-type B-X/I-X predecessor as B-X and
/// returns how many tags changed.
int repair_bio(TaggedSequence& sequence);

struct LoadOptions {
  Scheme scheme = Scheme::bio;
  // Strict rejects sequences needing BIO repair instead of repairing them.
  bool strict = false;
};

/// "surface<TAB>tag" lines, blank line between sequences.
std::vector<TaggedSequence> parse_tagged(std::string_view content,
                                         const LoadOptions& options = {});
std::vector<TaggedSequence> load_tagged_file(const std::filesystem::path& path,
                                             const LoadOptions& options = {});

struct GoldPred {
  std::vector<TaggedSequence> gold;
  std::vector<TaggedSequence> pred;
};

/// Three-column form: "surface<TAB>gold<TAB>pred".
GoldPred parse_tagged_pair(std::string_view content,
                           const LoadOptions& options = {});

std::string format_tagged(const std::vector<TaggedSequence>& sequences);

struct SplitSpec {
  double train_ratio = 0.70;
  double test_ratio = 0.20;
  double eval_ratio = 0.10;
  std::uint64_t seed = 0;

  void validate() const;  // ratios nonnegative, summing to one
};

struct SplitResult {
  std::vector<TaggedSequence> train;
  std::vector<TaggedSequence> test;
  std::vector<TaggedSequence> eval;
};

/// Seeded shuffle, then contiguous cuts at the train and train+test
/// boundaries (floor). Every input sequence lands in exactly one part.
SplitResult split_dataset(const std::vector<TaggedSequence>& sequences,
                          const SplitSpec& spec);

struct Chunk {
  std::string type;
  std::size_t begin = 0;  // token index
  std::size_t end = 0;    // exclusive

  bool operator==(const Chunk& other) const = default;
  auto operator<=>(const Chunk& other) const = default;
};

/// Maximal BIO chunks. An I-X without a same-type predecessor starts a new
/// chunk; tags outside the BIO shape count as O.
std::vector<Chunk> extract_chunks(const TaggedSequence& sequence);

struct ScoreRow {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t support = 0;  // gold entities (NER) or gold tokens (POS)
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

enum class Averaging { micro, weighted };

struct EvalReport {
  std::map<std::string, ScoreRow> per_tag;
  ScoreRow micro;     // from summed tp/fp/fn
  ScoreRow weighted;  // support-weighted mean of the per-tag rows
  Averaging avg_mode = Averaging::micro;  // which row the table labels AVG
};

/// Entity-level scoring: a predicted chunk is a true positive iff its
/// (type, begin, end) exactly matches a gold chunk.
EvalReport score_ner(const std::vector<TaggedSequence>& gold,
                     const std::vector<TaggedSequence>& pred,
                     Averaging avg = Averaging::micro);

/// Token-level scoring: each token is one decision for its gold tag.
EvalReport score_pos(const std::vector<TaggedSequence>& gold,
                     const std::vector<TaggedSequence>& pred,
                     Averaging avg = Averaging::weighted);

/// Aligned per-tag table with a closing AVG row.
std::string format_report(const EvalReport& report);

/// Machine-readable JSON mirror of format_report.
std::string report_to_json(const EvalReport& report);

/// One column per checkpoint with the FB1 value underneath; steps render as
/// 10k / 2M style labels and must be strictly increasing.
std::string checkpoint_curve(
    const std::vector<std::pair<std::uint64_t, double>>& f1_by_step);
std::string checkpoint_curve(
    const std::vector<std::pair<std::uint64_t, EvalReport>>& reports);

/// FB1 cell text: fixed four decimals with trailing zeros removed.
std::string format_f1(double value);

}  // namespace svprep::evalkit

#endif  // SVPREP_EVALKIT_HPP_

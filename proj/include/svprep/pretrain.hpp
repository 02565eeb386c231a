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

#ifndef SVPREP_PRETRAIN_HPP_
#define SVPREP_PRETRAIN_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "svprep/vocab.hpp"

namespace svprep::pretrain {

struct MaskingConfig {
  int max_seq_len = 128;
  double mask_fraction = 0.15;
  double mask_token_prob = 0.8;
  double random_token_prob = 0.1;
  double keep_token_prob = 0.1;
  int dupe_factor = 10;
  std::uint64_t seed = 0;
  double short_seq_prob = 0.1;

  /// Throws config_error unless the three replacement probabilities sum to
  /// one and every field is in range.
  void validate() const;
};

/// Cap on masked positions per instance: floor(max_seq_len × mask_fraction).
int max_predictions(const MaskingConfig& config);

/// Positions to mask for an instance of actual_len tokens:
/// min(max_predictions, max(1, floor(actual_len × mask_fraction))).
int num_to_mask(int actual_len, const MaskingConfig& config);

struct PretrainInstance {
  std::vector<int> token_ids;      // [CLS] A... [SEP] B... [SEP]
  std::vector<int> segment_ids;    // 0 through the first [SEP], then 1
  std::vector<int> masked_positions;
  std::vector<int> masked_label_ids;  // original ids at masked_positions
  bool is_random_next = false;

  bool operator==(const PretrainInstance& other) const = default;
};

/// Empty when the instance satisfies every structural invariant for config,
/// otherwise a description of the first violation.
std::string validate_instance(const PretrainInstance& instance,
                              const MaskingConfig& config);

struct PretrainReport {
  std::uint64_t documents = 0;
  std::uint64_t instances = 0;
  std::uint64_t skipped_paragraphs = 0;  // every sentence too long to pack
  std::uint64_t masked_mask = 0;
  std::uint64_t masked_random = 0;
  std::uint64_t masked_keep = 0;
  std::vector<std::uint64_t> position_histogram;  // position -> times masked

  PretrainReport& operator+=(const PretrainReport& other);
};

/// Packs each document's sentences into segment pairs and masks them.
/// Randomness comes from per-(document, pass) streams derived from
/// config.seed, so the output is identical for any worker count. Documents
/// whose every sentence encodes longer than max_seq_len - 3 are skipped and
/// counted; chunks holding a single sentence yield no instance, which keeps
/// emitted next-sentence labels an even coin flip.
std::vector<PretrainInstance> create_instances(
    const std::vector<std::vector<std::string>>& documents,
    const vocab::SubwordVocab& vocab, const MaskingConfig& config,
    PretrainReport* report = nullptr, int workers = 1);

/// One JSON record per line; load(save(x)) == x.
std::string serialize_instances(const std::vector<PretrainInstance>& instances);
std::vector<PretrainInstance> load_instances(std::string_view content);
void save_instances_file(const std::vector<PretrainInstance>& instances,
                         const std::filesystem::path& path);
std::vector<PretrainInstance> load_instances_file(
    const std::filesystem::path& path);

/// Human-readable run summary with the masked-position histogram.
std::string format_report(const PretrainReport& report);

}  // namespace svprep::pretrain

#endif  // SVPREP_PRETRAIN_HPP_

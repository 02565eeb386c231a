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

#ifndef SVPREP_VOCAB_HPP_
#define SVPREP_VOCAB_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace svprep::vocab {

// Reserved control tokens occupy these ids in every vocabulary.
inline constexpr int kPadId = 0;
inline constexpr int kUnkId = 1;
inline constexpr int kClsId = 2;
inline constexpr int kSepId = 3;
inline constexpr int kMaskId = 4;
inline constexpr int kNumControlTokens = 5;

/// The five control tokens in id order.
const std::vector<std::string>& control_tokens();

struct MergeRule {
  std::string left;
  std::string right;
  std::string merged;  // left + right with right's continuation marker removed

  bool operator==(const MergeRule& other) const = default;
};

struct TrainerConfig {
  std::size_t target_size = 50000;
  std::uint64_t min_pair_freq = 2;
  std::vector<std::string> special_tokens = control_tokens();
  std::string continuation_marker = "##";
};

/// Subword inventory with dense ids. Words are encoded as an initial symbol
/// plus continuation symbols carrying the marker. Immutable once trained and
/// safe to share across workers.
class SubwordVocab {
 public:
  std::size_t size() const { return tokens_.size(); }
  bool contains(std::string_view token) const;
  int id_of(std::string_view token) const;  // -1 when absent
  const std::string& token_of(int id) const;
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::vector<MergeRule>& merges() const { return merges_; }
  const std::set<std::string>& specials() const { return specials_; }
  std::size_t target_size() const { return target_size_; }
  const std::string& marker() const { return marker_; }

  /// Whitespace pre-split, then per-word merge application in training
  /// order. Characters missing from the vocabulary become [UNK].
  std::vector<int> encode(std::string_view text) const;
  std::vector<int> encode_word(std::string_view word) const;

  /// Inverse of encode up to whitespace: words joined by single spaces,
  /// continuation markers stripped.
  std::string decode(const std::vector<int>& ids) const;

  // One token per line, line number - 1 = id.
  std::string save_vocab() const;
  // One "left right" pair per line in training order.
  std::string save_merges() const;
  void save(const std::filesystem::path& vocab_path,
            const std::filesystem::path& merges_path) const;
  static SubwordVocab load(std::string_view vocab_text,
                           std::string_view merges_text,
                           std::string marker = "##");
  static SubwordVocab load_files(const std::filesystem::path& vocab_path,
                                 const std::filesystem::path& merges_path,
                                 std::string marker = "##");

 private:
  friend SubwordVocab train_vocab(const std::vector<std::string>&,
                                  const TrainerConfig&);
  friend SubwordVocab inject_special_tokens(const SubwordVocab&,
                                            const std::vector<std::string>&,
                                            bool, std::vector<std::string>*);

  void add_token(std::string token, std::uint64_t freq);
  void add_merge(MergeRule rule);

  std::vector<std::string> tokens_;
  std::vector<std::uint64_t> freqs_;  // training-time counts, 0 for specials
  std::unordered_map<std::string, int> ids_;
  std::vector<MergeRule> merges_;
  std::map<std::pair<std::string, std::string>, int> merge_rank_;
  std::set<std::string> specials_;
  std::size_t target_size_ = 0;
  std::string marker_ = "##";
};

/// Pair-merge training over the sentence stream. Initial symbols are the
/// observed characters (word-internal ones carry the marker); the most
/// frequent adjacent pair is merged until target_size is reached or no pair
/// meets min_pair_freq. Equal frequencies break toward the lexicographically
/// smaller (left, right) pair, so training is a pure function of corpus
/// bytes and config.
SubwordVocab train_vocab(const std::vector<std::string>& sentences,
                         const TrainerConfig& config = {});

/// Adds tokens not already present. Append mode (replace_lowest = false)
/// assigns fresh ids and leaves existing ids untouched; replace mode evicts
/// the lowest-frequency non-special trained token instead (ties evict the
/// highest id) and drops merge rules whose output was evicted. Duplicates in
/// the request list are dropped and noted in log.
SubwordVocab inject_special_tokens(const SubwordVocab& vocab,
                                   const std::vector<std::string>& tokens,
                                   bool replace_lowest = false,
                                   std::vector<std::string>* log = nullptr);

/// Bare and continuation forms of every emoji codepoint, skin-tone modifier,
/// and emoji component this toolkit recognizes.
std::vector<std::string> default_emoji_tokens(const std::string& marker = "##");

}  // namespace svprep::vocab

#endif  // SVPREP_VOCAB_HPP_

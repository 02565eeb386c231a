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

#include "svprep/vocab.hpp"

#include <algorithm>
#include <sstream>

#include "svprep/unicode.hpp"
#include "svprep/util.hpp"

namespace svprep::vocab {

const std::vector<std::string>& control_tokens() {
  static const std::vector<std::string> tokens = {"[PAD]", "[UNK]", "[CLS]",
                                                  "[SEP]", "[MASK]"};
  return tokens;
}

namespace {

// First character bare, the rest prefixed with the continuation marker.
std::vector<std::string> symbolize(std::string_view word,
                                   const std::string& marker) {
  std::vector<std::string> syms;
  std::size_t i = 0;
  while (i < word.size()) {
    uni::Decoded d = uni::decode(word, i);
    std::size_t len = d.len == 0 ? 1 : static_cast<std::size_t>(d.len);
    std::string sym = syms.empty() ? std::string() : marker;
    sym.append(word.substr(i, len));
    syms.push_back(std::move(sym));
    i += len;
  }
  return syms;
}

std::string strip_marker(const std::string& sym, const std::string& marker) {
  if (!marker.empty() && util::starts_with(sym, marker))
    return sym.substr(marker.size());
  return sym;
}

std::vector<std::string> whitespace_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  std::size_t start = 0;
  bool in_word = false;
  while (i < text.size()) {
    uni::Decoded d = uni::decode(text, i);
    std::size_t len = d.len == 0 ? 1 : static_cast<std::size_t>(d.len);
    bool space = d.len != 0 && uni::is_space(d.cp);
    if (space) {
      if (in_word) {
        words.emplace_back(text.substr(start, i - start));
        in_word = false;
      }
    } else if (!in_word) {
      start = i;
      in_word = true;
    }
    i += len;
  }
  if (in_word) words.emplace_back(text.substr(start));
  return words;
}

}  // namespace

bool SubwordVocab::contains(std::string_view token) const {
  return ids_.find(std::string(token)) != ids_.end();
}

int SubwordVocab::id_of(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? -1 : it->second;
}

const std::string& SubwordVocab::token_of(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size())
    throw stage_error("token id " + std::to_string(id) +
                      " outside vocabulary of " +
                      std::to_string(tokens_.size()));
  return tokens_[static_cast<std::size_t>(id)];
}

void SubwordVocab::add_token(std::string token, std::uint64_t freq) {
  int id = static_cast<int>(tokens_.size());
  ids_.emplace(token, id);
  tokens_.push_back(std::move(token));
  freqs_.push_back(freq);
}

void SubwordVocab::add_merge(MergeRule rule) {
  merge_rank_[{rule.left, rule.right}] = static_cast<int>(merges_.size());
  merges_.push_back(std::move(rule));
}

std::vector<int> SubwordVocab::encode_word(std::string_view word) const {
  std::vector<int> ids;
  if (word.empty()) return ids;
  std::vector<std::string> syms = symbolize(word, marker_);
  // Lowest-rank-first application reproduces training order: a merge can
  // only ever create pairs of higher rank than itself.
  while (syms.size() > 1) {
    int best_rank = -1;
    for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
      auto it = merge_rank_.find({syms[i], syms[i + 1]});
      if (it != merge_rank_.end() &&
          (best_rank < 0 || it->second < best_rank))
        best_rank = it->second;
    }
    if (best_rank < 0) break;
    const MergeRule& rule = merges_[static_cast<std::size_t>(best_rank)];
    std::vector<std::string> next;
    next.reserve(syms.size());
    std::size_t i = 0;
    while (i < syms.size()) {
      if (i + 1 < syms.size() && syms[i] == rule.left &&
          syms[i + 1] == rule.right) {
        next.push_back(rule.merged);
        i += 2;
      } else {
        next.push_back(std::move(syms[i]));
        ++i;
      }
    }
    syms = std::move(next);
  }
  ids.reserve(syms.size());
  for (const auto& sym : syms) {
    int id = id_of(sym);
    ids.push_back(id < 0 ? kUnkId : id);
  }
  return ids;
}

std::vector<int> SubwordVocab::encode(std::string_view text) const {
  std::vector<int> ids;
  for (const auto& word : whitespace_words(text)) {
    std::vector<int> word_ids = encode_word(word);
    ids.insert(ids.end(), word_ids.begin(), word_ids.end());
  }
  return ids;
}

std::string SubwordVocab::decode(const std::vector<int>& ids) const {
  std::string out;
  for (int id : ids) {
    const std::string& token = token_of(id);
    if (!marker_.empty() && util::starts_with(token, marker_) &&
        token.size() > marker_.size()) {
      out.append(token, marker_.size(), std::string::npos);
    } else {
      if (!out.empty()) out.push_back(' ');
      out.append(token);
    }
  }
  return out;
}

std::string SubwordVocab::save_vocab() const {
  std::string out;
  for (const auto& token : tokens_) {
    out.append(token);
    out.push_back('\n');
  }
  return out;
}

std::string SubwordVocab::save_merges() const {
  std::string out;
  for (const auto& rule : merges_) {
    out.append(rule.left);
    out.push_back(' ');
    out.append(rule.right);
    out.push_back('\n');
  }
  return out;
}

void SubwordVocab::save(const std::filesystem::path& vocab_path,
                        const std::filesystem::path& merges_path) const {
  util::write_file(vocab_path, save_vocab());
  util::write_file(merges_path, save_merges());
}

SubwordVocab SubwordVocab::load(std::string_view vocab_text,
                                std::string_view merges_text,
                                std::string marker) {
  SubwordVocab vocab;
  vocab.marker_ = std::move(marker);
  std::size_t lineno = 0;
  for (auto line : util::split(vocab_text, '\n')) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (vocab.contains(line))
      throw stage_error("vocabulary line " + std::to_string(lineno) +
                        ": duplicate token '" + std::string(line) + "'");
    vocab.add_token(std::string(line), 0);
  }
  const auto& controls = control_tokens();
  if (vocab.size() < controls.size())
    throw stage_error("vocabulary lacks the reserved control tokens");
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (vocab.tokens_[i] != controls[i])
      throw stage_error("vocabulary id " + std::to_string(i) + " is '" +
                        vocab.tokens_[i] + "', expected '" + controls[i] +
                        "'");
    vocab.specials_.insert(controls[i]);
  }
  lineno = 0;
  for (auto line : util::split(merges_text, '\n')) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fields = util::split_ws(line);
    if (fields.size() != 2)
      throw stage_error("merge file line " + std::to_string(lineno) +
                        ": expected 'left right'");
    MergeRule rule;
    rule.left = std::string(fields[0]);
    rule.right = std::string(fields[1]);
    rule.merged = rule.left + strip_marker(rule.right, vocab.marker_);
    if (!vocab.contains(rule.merged))
      throw stage_error("merge file line " + std::to_string(lineno) +
                        ": output '" + rule.merged +
                        "' missing from vocabulary");
    vocab.add_merge(std::move(rule));
  }
  vocab.target_size_ = vocab.size();
  return vocab;
}

SubwordVocab SubwordVocab::load_files(const std::filesystem::path& vocab_path,
                                      const std::filesystem::path& merges_path,
                                      std::string marker) {
  return load(util::read_file(vocab_path), util::read_file(merges_path),
              std::move(marker));
}

SubwordVocab train_vocab(const std::vector<std::string>& sentences,
                         const TrainerConfig& config) {
  if (config.continuation_marker.empty())
    throw config_error("continuation marker must be nonempty");
  const auto& controls = control_tokens();
  if (config.special_tokens.size() < controls.size())
    throw config_error("special tokens must start with the control tokens");
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (config.special_tokens[i] != controls[i])
      throw config_error("special token " + std::to_string(i) + " must be " +
                         controls[i]);
  }
  {
    std::set<std::string> unique(config.special_tokens.begin(),
                                 config.special_tokens.end());
    if (unique.size() != config.special_tokens.size())
      throw config_error("special token list contains duplicates");
  }

  std::map<std::string, std::uint64_t> word_freqs;
  for (const auto& sentence : sentences)
    for (auto& word : whitespace_words(sentence)) word_freqs[word]++;
  if (word_freqs.empty()) throw stage_error("training corpus is empty");

  struct Word {
    std::vector<std::string> syms;
    std::uint64_t freq;
  };
  std::vector<Word> words;
  words.reserve(word_freqs.size());
  std::map<std::string, std::uint64_t> alphabet;
  for (const auto& [word, freq] : word_freqs) {
    Word w{symbolize(word, config.continuation_marker), freq};
    for (const auto& sym : w.syms) alphabet[sym] += freq;
    words.push_back(std::move(w));
  }

  if (config.special_tokens.size() + alphabet.size() > config.target_size)
    throw config_error(
        "corpus alphabet of " + std::to_string(alphabet.size()) +
        " symbols plus " + std::to_string(config.special_tokens.size()) +
        " specials exceeds target_size " + std::to_string(config.target_size) +
        "; increase target_size");

  SubwordVocab vocab;
  vocab.marker_ = config.continuation_marker;
  vocab.target_size_ = config.target_size;
  for (const auto& token : config.special_tokens) {
    vocab.add_token(token, 0);
    vocab.specials_.insert(token);
  }
  for (const auto& [sym, freq] : alphabet) vocab.add_token(sym, freq);

  using Pair = std::pair<std::string, std::string>;
  std::map<Pair, std::uint64_t> counts;
  for (const auto& w : words)
    for (std::size_t i = 0; i + 1 < w.syms.size(); ++i)
      counts[{w.syms[i], w.syms[i + 1]}] += w.freq;

  while (vocab.size() < config.target_size && !counts.empty()) {
    // Map order is lexicographic on (left, right), so the first maximum is
    // the deterministic tie-break winner.
    auto best = counts.begin();
    for (auto it = std::next(counts.begin()); it != counts.end(); ++it)
      if (it->second > best->second) best = it;
    if (best->second < config.min_pair_freq) break;

    MergeRule rule;
    rule.left = best->first.first;
    rule.right = best->first.second;
    rule.merged =
        rule.left + strip_marker(rule.right, config.continuation_marker);
    std::uint64_t pair_freq = best->second;
    vocab.add_merge(rule);
    int existing = vocab.id_of(rule.merged);
    if (existing < 0) {
      vocab.add_token(rule.merged, pair_freq);
    } else {
      vocab.freqs_[static_cast<std::size_t>(existing)] += pair_freq;
    }

    for (auto& w : words) {
      bool hit = false;
      for (std::size_t i = 0; i + 1 < w.syms.size(); ++i) {
        if (w.syms[i] == rule.left && w.syms[i + 1] == rule.right) {
          hit = true;
          break;
        }
      }
      if (!hit) continue;
      for (std::size_t i = 0; i + 1 < w.syms.size(); ++i) {
        auto it = counts.find({w.syms[i], w.syms[i + 1]});
        it->second -= w.freq;
        if (it->second == 0) counts.erase(it);
      }
      std::vector<std::string> next;
      next.reserve(w.syms.size());
      std::size_t i = 0;
      while (i < w.syms.size()) {
        if (i + 1 < w.syms.size() && w.syms[i] == rule.left &&
            w.syms[i + 1] == rule.right) {
          next.push_back(rule.merged);
          i += 2;
        } else {
          next.push_back(std::move(w.syms[i]));
          ++i;
        }
      }
      w.syms = std::move(next);
      for (std::size_t j = 0; j + 1 < w.syms.size(); ++j)
        counts[{w.syms[j], w.syms[j + 1]}] += w.freq;
    }
  }
  return vocab;
}

SubwordVocab inject_special_tokens(const SubwordVocab& vocab,
                                   const std::vector<std::string>& tokens,
                                   bool replace_lowest,
                                   std::vector<std::string>* log) {
  SubwordVocab out = vocab;
  std::set<std::string> seen;
  for (const auto& token : tokens) {
    if (token.empty()) {
      if (log != nullptr) log->push_back("empty injection token ignored");
      continue;
    }
    if (!seen.insert(token).second) {
      if (log != nullptr)
        log->push_back("duplicate injection token ignored: " + token);
      continue;
    }
    if (out.contains(token)) {
      if (log != nullptr) log->push_back("already present: " + token);
      continue;
    }
    if (!replace_lowest) {
      out.add_token(token, 0);
      out.specials_.insert(token);
      continue;
    }
    int victim = -1;
    for (int id = kNumControlTokens; id < static_cast<int>(out.size()); ++id) {
      const std::string& t = out.tokens_[static_cast<std::size_t>(id)];
      if (out.specials_.count(t) > 0) continue;
      // >= keeps the highest id among equal frequencies: the most recently
      // added token is the one evicted.
      if (victim < 0 ||
          out.freqs_[static_cast<std::size_t>(id)] <=
              out.freqs_[static_cast<std::size_t>(victim)])
        victim = id;
    }
    if (victim < 0)
      throw config_error("no trained token available to replace with " +
                         token);
    std::string evicted = out.tokens_[static_cast<std::size_t>(victim)];
    out.ids_.erase(evicted);
    out.tokens_[static_cast<std::size_t>(victim)] = token;
    out.freqs_[static_cast<std::size_t>(victim)] = 0;
    out.ids_[token] = victim;
    out.specials_.insert(token);
    if (log != nullptr)
      log->push_back("replaced '" + evicted + "' with '" + token + "'");
    std::vector<MergeRule> kept;
    kept.reserve(out.merges_.size());
    out.merge_rank_.clear();
    for (auto& rule : out.merges_) {
      if (rule.merged == evicted) continue;
      out.merge_rank_[{rule.left, rule.right}] =
          static_cast<int>(kept.size());
      kept.push_back(std::move(rule));
    }
    out.merges_ = std::move(kept);
  }
  return out;
}

std::vector<std::string> default_emoji_tokens(const std::string& marker) {
  std::vector<std::string> tokens;
  for (char32_t cp = 0x2000; cp <= 0x1FFFF; ++cp) {
    if (!uni::is_emoji(cp) && !uni::is_skin_tone(cp) &&
        !uni::is_emoji_component(cp))
      continue;
    std::string bare;
    uni::append_utf8(bare, cp);
    tokens.push_back(marker + bare);
    tokens.push_back(std::move(bare));
  }
  return tokens;
}

}  // namespace svprep::vocab

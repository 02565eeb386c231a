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

#ifndef SVPREP_OCRFIX_HPP_
#define SVPREP_OCRFIX_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "svprep/lexicon.hpp"

namespace svprep::ocrfix {

enum class Origin { automatic, override };

struct CorrectionEntry {
  std::string wrong;
  std::string correct;
  std::uint64_t occurrences = 0;  // corpus frequency of the wrong form
  Origin origin = Origin::automatic;

  bool operator==(const CorrectionEntry& other) const = default;
};

/// Wrong-form -> corrected-form mapping. Keys are folded; override entries
/// shadow automatic ones on the same key. Immutable once built and safe to
/// share across workers.
class CorrectionMap {
 public:
  void insert(CorrectionEntry entry);
  const CorrectionEntry* find(std::string_view folded_token) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Entries sorted by wrong form.
  std::vector<CorrectionEntry> sorted_entries() const;

  // Tab-separated "wrong<TAB>correct<TAB>occurrences<TAB>origin", sorted by
  // wrong form. save/load round-trip bit-exact.
  std::string save() const;
  static CorrectionMap load(std::string_view content);
  void save_file(const std::filesystem::path& path) const;
  static CorrectionMap load_file(const std::filesystem::path& path);

  bool operator==(const CorrectionMap& other) const;

 private:
  std::map<std::string, CorrectionEntry> entries_;  // folded wrong -> entry
};

using TokenFreqs = std::unordered_map<std::string, std::uint64_t>;

/// All forms reachable from token by swapping 1..max_sites occurrences of
/// "rn" for "m" or "m" for "rn". Sites are located in the input only, the
/// input itself is never returned, and enumeration stops at variant_cap.
std::set<std::string> rn_m_variants(std::string_view token, int max_sites,
                                    std::size_t variant_cap = 64);

struct BuildOptions {
  std::uint64_t min_freq = 2;
  int max_sites = 2;
};

struct BuildResult {
  CorrectionMap map;
  std::vector<std::string> warnings;
  std::uint64_t candidates_considered = 0;  // out-of-lexicon tokens with sites
  std::uint64_t ambiguous_dropped = 0;      // ties left uncorrected
};

/// Scans the frequency table for out-of-lexicon tokens whose rn/m variants
/// land in the lexicon. A single valid variant becomes an automatic entry;
/// several valid variants are ranked by corpus frequency, then fewest
/// substitution sites, then lexicographic order, and the winner is dropped
/// when the top two still tie on frequency and sites. Overrides are honored
/// verbatim and shadow automatic entries; automatic entries whose corrected
/// form is itself an override key are dropped so that applying the map twice
/// equals applying it once.
BuildResult build_correction_map(const TokenFreqs& token_freqs,
                                 const Lexicon& lexicon,
                                 const std::vector<CorrectionEntry>& overrides,
                                 const BuildOptions& options = {});

struct CorrectionReport {
  std::uint64_t occurrences_corrected = 0;
  std::map<std::string, std::uint64_t> per_entry;

  CorrectionReport& operator+=(const CorrectionReport& other);
};

/// Replaces every matching token in text. Matching is case-insensitive and
/// the replacement re-applies the source casing (lower, Capitalized,
/// ALL-CAPS); mixed-case tokens are replaced only when they equal the stored
/// wrong form exactly. Everything between tokens is copied byte for byte.
std::string apply_corrections(std::string_view text, const CorrectionMap& map,
                              CorrectionReport* report = nullptr);

/// Whitespace/punctuation-delimited word tokens of text, in order.
std::vector<std::string> word_tokens(std::string_view text);

/// Accumulates fold-level token frequencies from text into freqs.
void count_tokens(std::string_view text, TokenFreqs& freqs);

/// Override file in the map's tab-separated format (origin column optional,
/// forced to override).
std::vector<CorrectionEntry> load_overrides(const std::filesystem::path& path);

}  // namespace svprep::ocrfix

#endif  // SVPREP_OCRFIX_HPP_

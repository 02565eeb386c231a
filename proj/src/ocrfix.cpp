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

#include "svprep/ocrfix.hpp"

#include <algorithm>
#include <sstream>

#include "svprep/unicode.hpp"
#include "svprep/util.hpp"

namespace svprep::ocrfix {

void CorrectionMap::insert(CorrectionEntry entry) {
  std::string key = uni::fold_case(entry.wrong);
  auto it = entries_.find(key);
  if (it != entries_.end()) {
    // Overrides shadow automatic entries, never the other way around.
    if (it->second.origin == Origin::override &&
        entry.origin == Origin::automatic)
      return;
    it->second = std::move(entry);
    return;
  }
  entries_.emplace(std::move(key), std::move(entry));
}

const CorrectionEntry* CorrectionMap::find(std::string_view folded) const {
  auto it = entries_.find(std::string(folded));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<CorrectionEntry> CorrectionMap::sorted_entries() const {
  std::vector<CorrectionEntry> out;
  out.reserve(entries_.size());
  for (const auto& [key, entry] : entries_) out.push_back(entry);
  return out;
}

std::string CorrectionMap::save() const {
  std::ostringstream out;
  for (const auto& [key, e] : entries_) {
    out << e.wrong << '\t' << e.correct << '\t' << e.occurrences << '\t'
        << (e.origin == Origin::automatic ? "auto" : "override") << '\n';
  }
  return std::move(out).str();
}

CorrectionMap CorrectionMap::load(std::string_view content) {
  CorrectionMap map;
  std::size_t lineno = 0;
  for (auto line : util::split(content, '\n')) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fields = util::split(line, '\t');
    if (fields.size() != 4)
      throw stage_error("correction map line " + std::to_string(lineno) +
                        ": expected 4 tab-separated fields");
    CorrectionEntry e;
    e.wrong = std::string(fields[0]);
    e.correct = std::string(fields[1]);
    try {
      e.occurrences = std::stoull(std::string(fields[2]));
    } catch (const std::exception&) {
      throw stage_error("correction map line " + std::to_string(lineno) +
                        ": bad occurrence count");
    }
    if (fields[3] == "auto") {
      e.origin = Origin::automatic;
    } else if (fields[3] == "override") {
      e.origin = Origin::override;
    } else {
      throw stage_error("correction map line " + std::to_string(lineno) +
                        ": unknown origin '" + std::string(fields[3]) + "'");
    }
    map.insert(std::move(e));
  }
  return map;
}

void CorrectionMap::save_file(const std::filesystem::path& path) const {
  util::write_file(path, save());
}

CorrectionMap CorrectionMap::load_file(const std::filesystem::path& path) {
  return load(util::read_file(path));
}

bool CorrectionMap::operator==(const CorrectionMap& other) const {
  return entries_ == other.entries_;
}

namespace {

struct Site {
  std::size_t pos;
  bool is_rn;  // "rn" -> "m" at pos, else "m" -> "rn"
};

// Confusion sites in the input. Lowercase only: the glyph confusion is
// between lowercase m and rn; casing is restored separately on apply.
std::vector<Site> find_sites(std::string_view token) {
  std::vector<Site> sites;
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (token[i] == 'm') {
      sites.push_back({i, false});
    } else if (token[i] == 'r' && i + 1 < token.size() && token[i + 1] == 'n') {
      sites.push_back({i, true});
      ++i;
    }
  }
  return sites;
}

std::string apply_sites(std::string_view token, const std::vector<Site>& sites,
                        const std::vector<std::size_t>& chosen) {
  std::string out;
  out.reserve(token.size() + chosen.size());
  std::size_t pos = 0;
  for (std::size_t idx : chosen) {
    const Site& s = sites[idx];
    out.append(token.substr(pos, s.pos - pos));
    out.append(s.is_rn ? "m" : "rn");
    pos = s.pos + (s.is_rn ? 2 : 1);
  }
  out.append(token.substr(pos));
  return out;
}

// Variants with the fewest substitution sites that can produce them;
// enumeration is by subset size, then position order, and stops at cap.
std::vector<std::pair<std::string, int>> enumerate_variants(
    std::string_view token, int max_sites, std::size_t cap) {
  std::vector<std::pair<std::string, int>> variants;
  if (token.empty() || max_sites < 1 || cap == 0) return variants;
  std::vector<Site> sites = find_sites(token);
  if (sites.empty()) return variants;

  std::set<std::string> seen;
  std::vector<std::size_t> chosen;
  for (int k = 1; k <= max_sites && static_cast<std::size_t>(k) <= sites.size();
       ++k) {
    chosen.assign(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i] = i;
    while (true) {
      std::string v = apply_sites(token, sites, chosen);
      if (v != token && seen.insert(v).second) {
        variants.emplace_back(std::move(v), k);
        if (variants.size() >= cap) return variants;
      }
      // Advance to the next k-combination of site indices.
      std::size_t j = chosen.size();
      while (j > 0 && chosen[j - 1] == sites.size() - chosen.size() + j - 1)
        --j;
      if (j == 0) break;
      ++chosen[j - 1];
      for (std::size_t l = j; l < chosen.size(); ++l)
        chosen[l] = chosen[l - 1] + 1;
    }
  }
  return variants;
}

}  // namespace

std::set<std::string> rn_m_variants(std::string_view token, int max_sites,
                                    std::size_t variant_cap) {
  std::set<std::string> out;
  for (auto& [v, sites] : enumerate_variants(token, max_sites, variant_cap))
    out.insert(std::move(v));
  return out;
}

BuildResult build_correction_map(const TokenFreqs& token_freqs,
                                 const Lexicon& lexicon,
                                 const std::vector<CorrectionEntry>& overrides,
                                 const BuildOptions& options) {
  if (lexicon.empty()) throw config_error("correction map needs a lexicon");
  BuildResult result;

  // Fold-level aggregation: casing variants of the same form share counts.
  std::map<std::string, std::uint64_t> folded;
  for (const auto& [token, count] : token_freqs)
    folded[uni::fold_case(token)] += count;

  std::set<std::string> override_keys;
  for (const auto& o : overrides) override_keys.insert(uni::fold_case(o.wrong));

  for (const auto& [token, count] : folded) {
    if (count < options.min_freq) continue;
    if (lexicon.contains(token)) continue;
    auto variants = enumerate_variants(token, options.max_sites, 64);
    if (variants.empty()) continue;
    result.candidates_considered++;

    struct Candidate {
      std::string form;
      std::uint64_t freq;
      int sites;
    };
    std::vector<Candidate> in_lexicon;
    for (auto& [form, sites] : variants) {
      if (!lexicon.contains(form)) continue;
      auto it = folded.find(form);
      std::uint64_t freq = it == folded.end() ? 0 : it->second;
      in_lexicon.push_back({std::move(form), freq, sites});
    }
    if (in_lexicon.empty()) continue;

    const Candidate* winner = &in_lexicon[0];
    if (in_lexicon.size() > 1) {
      std::sort(in_lexicon.begin(), in_lexicon.end(),
                [](const Candidate& a, const Candidate& b) {
                  if (a.freq != b.freq) return a.freq > b.freq;
                  if (a.sites != b.sites) return a.sites < b.sites;
                  return a.form < b.form;
                });
      // A genuine tie on frequency and site count means abstain; picking by
      // spelling alone would risk corrupting valid text.
      if (in_lexicon[0].freq == in_lexicon[1].freq &&
          in_lexicon[0].sites == in_lexicon[1].sites) {
        result.ambiguous_dropped++;
        continue;
      }
      winner = &in_lexicon[0];
    }
    if (override_keys.count(uni::fold_case(winner->form)) > 0) {
      // Correcting into an override key would chain two rewrites.
      result.warnings.push_back("dropped automatic entry " + token + " -> " +
                                winner->form +
                                ": corrected form is an override key");
      continue;
    }
    result.map.insert(
        {token, winner->form, count, Origin::automatic});
  }

  for (const auto& o : overrides) {
    if (o.wrong == o.correct) {
      result.warnings.push_back("override ignored, wrong equals correct: " +
                                o.wrong);
      continue;
    }
    if (!lexicon.contains(o.correct)) {
      result.warnings.push_back("override correct form not in lexicon: " +
                                o.correct + " (entry honored)");
    }
    if (override_keys.count(uni::fold_case(o.correct)) > 0) {
      result.warnings.push_back("override chain: corrected form '" + o.correct +
                                "' is itself an override key");
    }
    CorrectionEntry e = o;
    e.origin = Origin::override;
    auto it = folded.find(uni::fold_case(e.wrong));
    if (e.occurrences == 0 && it != folded.end()) e.occurrences = it->second;
    result.map.insert(std::move(e));
  }
  return result;
}

CorrectionReport& CorrectionReport::operator+=(const CorrectionReport& other) {
  occurrences_corrected += other.occurrences_corrected;
  for (const auto& [k, v] : other.per_entry) per_entry[k] += v;
  return *this;
}

namespace {

enum class Casing { lower, capitalized, allcaps, mixed };

Casing casing_of(std::string_view token) {
  std::size_t i = 0;
  std::size_t letters = 0, uppers = 0;
  bool first_letter_upper = false;
  bool tail_has_upper = false;
  while (i < token.size()) {
    uni::Decoded d = uni::decode(token, i);
    std::size_t len = d.len == 0 ? 1 : static_cast<std::size_t>(d.len);
    if (d.len != 0 && uni::is_letter(d.cp)) {
      bool up = uni::is_upper(d.cp);
      if (letters == 0) first_letter_upper = up;
      else if (up) tail_has_upper = true;
      if (up) ++uppers;
      ++letters;
    }
    i += len;
  }
  if (uppers == 0) return Casing::lower;
  if (uppers == letters && letters >= 2) return Casing::allcaps;
  if (first_letter_upper && !tail_has_upper) return Casing::capitalized;
  return Casing::mixed;
}

std::string capitalize(std::string_view folded) {
  uni::Decoded d = uni::decode(folded, 0);
  if (d.len == 0) return std::string(folded);
  std::string out;
  uni::append_utf8(out, uni::to_upper(d.cp));
  out.append(folded.substr(static_cast<std::size_t>(d.len)));
  return out;
}

}  // namespace

std::string apply_corrections(std::string_view text, const CorrectionMap& map,
                              CorrectionReport* report) {
  std::string out;
  out.reserve(text.size());
  CorrectionReport local;
  std::string fold_buf;

  std::size_t i = 0;
  while (i < text.size()) {
    uni::Decoded d = uni::decode(text, i);
    std::size_t len = d.len == 0 ? 1 : static_cast<std::size_t>(d.len);
    if (d.len == 0 || !uni::is_alnum(d.cp)) {
      out.append(text.substr(i, len));
      i += len;
      continue;
    }
    std::size_t start = i;
    while (i < text.size()) {
      uni::Decoded td = uni::decode(text, i);
      if (td.len == 0 || !uni::is_alnum(td.cp)) break;
      i += static_cast<std::size_t>(td.len);
    }
    std::string_view token = text.substr(start, i - start);
    const CorrectionEntry* entry = nullptr;
    if (!map.empty()) {
      fold_buf = uni::fold_case(token);
      entry = map.find(fold_buf);
    }
    if (entry == nullptr) {
      out.append(token);
      continue;
    }
    std::string folded_correct = uni::fold_case(entry->correct);
    bool replaced = true;
    switch (casing_of(token)) {
      case Casing::lower:
        out.append(folded_correct);
        break;
      case Casing::capitalized:
        out.append(capitalize(folded_correct));
        break;
      case Casing::allcaps:
        out.append(uni::to_upper_copy(folded_correct));
        break;
      case Casing::mixed:
        if (token == entry->wrong) {
          out.append(entry->correct);
        } else {
          out.append(token);
          replaced = false;
        }
        break;
    }
    if (replaced) {
      local.occurrences_corrected++;
      local.per_entry[entry->wrong]++;
    }
  }
  if (report != nullptr) *report += local;
  return out;
}

std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    uni::Decoded d = uni::decode(text, i);
    std::size_t len = d.len == 0 ? 1 : static_cast<std::size_t>(d.len);
    if (d.len == 0 || !uni::is_alnum(d.cp)) {
      i += len;
      continue;
    }
    std::size_t start = i;
    while (i < text.size()) {
      uni::Decoded td = uni::decode(text, i);
      if (td.len == 0 || !uni::is_alnum(td.cp)) break;
      i += static_cast<std::size_t>(td.len);
    }
    tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

void count_tokens(std::string_view text, TokenFreqs& freqs) {
  for (const auto& token : word_tokens(text)) freqs[uni::fold_case(token)]++;
}

std::vector<CorrectionEntry> load_overrides(const std::filesystem::path& path) {
  std::string content = util::read_file(path);
  std::vector<CorrectionEntry> entries;
  std::size_t lineno = 0;
  for (auto line : util::split(content, '\n')) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (util::trim(line).empty()) continue;
    auto fields = util::split(line, '\t');
    if (fields.size() < 2)
      throw config_error("override file line " + std::to_string(lineno) +
                         ": expected at least wrong<TAB>correct");
    CorrectionEntry e;
    e.wrong = std::string(fields[0]);
    e.correct = std::string(fields[1]);
    if (fields.size() >= 3 && !fields[2].empty()) {
      try {
        e.occurrences = std::stoull(std::string(fields[2]));
      } catch (const std::exception&) {
        throw config_error("override file line " + std::to_string(lineno) +
                           ": bad occurrence count");
      }
    }
    e.origin = Origin::override;
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace svprep::ocrfix

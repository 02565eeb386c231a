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

#include "svprep/segment.hpp"

#include <algorithm>
#include <cctype>

#include "svprep/unicode.hpp"
#include "svprep/util.hpp"

namespace svprep::segment {

namespace {

bool is_terminal(char32_t cp) {
  return cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x2026;
}

// Quotes and brackets that attach to the sentence they close. Both guillemet
// directions are listed; Swedish print uses the right-pointing form on both
// sides.
bool is_closer(char32_t cp) {
  switch (cp) {
    case U'"': case U'\'': case U')': case U']': case U'}':
    case 0x00BB: case 0x00AB:  // » «
    case 0x201D: case 0x2019:  // ” ’
    case 0x203A: case 0x2039:  // › ‹
      return true;
    default:
      return false;
  }
}

bool is_opening_quote(char32_t cp) {
  switch (cp) {
    case U'"': case U'\'':
    case 0x00AB: case 0x00BB:
    case 0x201C: case 0x201D: case 0x2018: case 0x2019:
    case 0x201E: case 0x201A:  // „ ‚
      return true;
    default:
      return false;
  }
}

// Longest abbreviation in the stock list is well under this.
constexpr std::size_t kMaxTokenScan = 64;

std::string collapse_ws(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  bool pending_space = false;
  while (i < s.size()) {
    uni::Decoded d = uni::decode(s, i);
    if (d.len == 0) {  // bogus byte, keep verbatim
      out.push_back(s[i++]);
      continue;
    }
    if (uni::is_space(d.cp)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.append(s.substr(i, static_cast<std::size_t>(d.len)));
    }
    i += static_cast<std::size_t>(d.len);
  }
  return out;
}

// Byte offset of the first codepoint of the trailing letter run, or npos if
// the string does not end in a letter.
std::size_t trailing_letter_run(std::string_view s, std::size_t end) {
  std::size_t run = end;
  std::size_t i = end;
  while (i > 0) {
    std::size_t j = i;
    do {
      --j;
    } while (j > 0 && (static_cast<unsigned char>(s[j]) & 0xC0) == 0x80);
    uni::Decoded d = uni::decode(s, j);
    if (d.len == 0 || !uni::is_letter(d.cp)) break;
    run = j;
    i = j;
  }
  return run == end ? std::string_view::npos : run;
}

std::size_t leading_letter_run_end(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    uni::Decoded d = uni::decode(s, i);
    if (d.len == 0 || !uni::is_letter(d.cp)) break;
    i += static_cast<std::size_t>(d.len);
  }
  return i;
}

}  // namespace

const std::set<std::string>& default_abbreviations() {
  static const std::set<std::string> kAbbrevs = {
      "t.ex.", "bl.a.", "dvs.", "osv.", "kap.", "s.",    "nr.",    "ca.",
      "m.m.",  "m.fl.", "p.g.a.", "fr.o.m.", "t.o.m.", "jfr.", "resp.",
  };
  return kAbbrevs;
}

SegmenterConfig::SegmenterConfig() : abbreviations(default_abbreviations()) {}

std::string dehyphenate(const std::vector<std::string>& lines,
                        const Lexicon& lexicon) {
  std::string out;
  for (const auto& raw : lines) {
    std::string_view line = util::trim(raw);
    if (line.empty()) continue;
    if (out.empty()) {
      out.assign(line);
      continue;
    }
    bool hyphen = out.back() == '-';
    uni::Decoded first = uni::decode(line, 0);
    if (hyphen && first.len > 0 && uni::is_lower(first.cp)) {
      std::size_t head_start = trailing_letter_run(out, out.size() - 1);
      std::string joined;
      if (head_start != std::string_view::npos) {
        joined = out.substr(head_start, out.size() - 1 - head_start);
        joined += line.substr(0, leading_letter_run_end(line));
      }
      if (!joined.empty() && lexicon.contains(joined)) {
        out.pop_back();  // drop the soft hyphen
        out.append(line);
      } else {
        out.append(line);  // keep the hyphen: a real compound
      }
    } else {
      out.push_back(' ');
      out.append(line);
    }
  }
  return out;
}

std::vector<Sentence> split_sentences(std::string_view text,
                                      const SegmenterConfig& config) {
  std::vector<Sentence> sentences;
  const std::size_t n = text.size();
  std::size_t max_abbrev = 0;
  for (const auto& form : config.abbreviations) {
    max_abbrev = std::max(max_abbrev, form.size());
  }

  auto skip_spaces = [&](std::size_t from) {
    while (from < n) {
      uni::Decoded d = uni::decode(text, from);
      if (d.len == 0 || !uni::is_space(d.cp)) break;
      from += static_cast<std::size_t>(d.len);
    }
    return from;
  };

  auto emit = [&](std::size_t begin, std::size_t end) {
    // Trim trailing whitespace bytes; begin is already on a non-space.
    while (end > begin) {
      unsigned char b = static_cast<unsigned char>(text[end - 1]);
      if (b == ' ' || b == '\t' || b == '\n' || b == '\r' || b == '\f' ||
          b == '\v')
        --end;
      else
        break;
    }
    if (end <= begin) return;
    std::string_view slice = text.substr(begin, end - begin);
    // Most slices are already collapsed; a byte scan spots the rest. Every
    // multi-byte space has lead byte C2, E1, E2 or E3, so those bytes route
    // to the full pass.
    bool collapsed = true;
    for (std::size_t k = 0; k < slice.size(); ++k) {
      unsigned char b = static_cast<unsigned char>(slice[k]);
      if (b == ' ') {
        if (k == 0 || (k + 1 < slice.size() && slice[k + 1] == ' ')) {
          collapsed = false;
          break;
        }
      } else if (b == '\t' || b == '\n' || b == '\r' || b == '\f' ||
                 b == '\v' || b == 0xC2 || b == 0xE1 || b == 0xE2 ||
                 b == 0xE3) {
        collapsed = false;
        break;
      }
    }
    std::string body = collapsed ? std::string(slice) : collapse_ws(slice);
    if (body.empty()) return;
    sentences.push_back(Sentence{std::move(body),
                                 static_cast<std::uint32_t>(begin),
                                 static_cast<std::uint32_t>(end)});
  };

  std::size_t start = skip_spaces(0);
  std::size_t i = start;
  std::size_t token_start = start;
  bool in_token = false;
  std::size_t suppress_until = 0;  // '.' inside a matched abbreviation
  char32_t prev_cp = 0;

  while (i < n) {
    uni::Decoded d = uni::decode(text, i);
    if (d.len == 0) {  // treat a stray byte as an ordinary character
      if (!in_token) {
        token_start = i;
        in_token = true;
      }
      prev_cp = 0;
      ++i;
      continue;
    }
    const char32_t cp = d.cp;
    const std::size_t cp_len = static_cast<std::size_t>(d.len);

    if (uni::is_space(cp)) {
      in_token = false;
      prev_cp = cp;
      i += cp_len;
      continue;
    }
    if (!in_token) {
      token_start = i;
      in_token = true;
    }

    if (is_terminal(cp) && i >= suppress_until) {
      bool terminal = true;
      if (cp == U'.') {
        uni::Decoded next = uni::decode(text, i + cp_len);
        // Decimal numbers: digit '.' digit.
        if (uni::is_digit(prev_cp) && next.len > 0 && uni::is_digit(next.cp)) {
          terminal = false;
        }
        if (terminal && !config.abbreviations.empty()) {
          // Whole whitespace-delimited token around this dot.
          std::size_t te = token_start;
          while (te < n && te - token_start < kMaxTokenScan) {
            uni::Decoded td = uni::decode(text, te);
            if (td.len == 0 || uni::is_space(td.cp)) break;
            te += static_cast<std::size_t>(td.len);
          }
          if (te > i) {
            // Shave punctuation that is not part of an abbreviation form.
            // Folding never changes a codepoint's encoded length, so the
            // raw span length rules out most tokens before any folding.
            std::size_t lo = token_start;
            std::size_t hi = te;
            while (hi > lo) {
              unsigned char c = static_cast<unsigned char>(text[hi - 1]);
              if (c == '.' || std::isalnum(c) || c >= 0x80) break;
              --hi;
            }
            while (lo < hi) {
              unsigned char c = static_cast<unsigned char>(text[lo]);
              if (std::isalnum(c) || c >= 0x80) break;
              ++lo;
            }
            if (hi > lo && hi - lo <= max_abbrev &&
                config.abbreviations.count(
                    uni::fold_case(text.substr(lo, hi - lo))) > 0) {
              suppress_until = te;
              terminal = false;
            }
          }
        }
        if (terminal) {
          // Ordinals ("3. maj"): a bare number token ends a sentence only
          // when something uppercase (or nothing) follows.
          bool all_digits = i > token_start;
          for (std::size_t k = token_start; k < i && all_digits;) {
            uni::Decoded kd = uni::decode(text, k);
            if (kd.len == 0 || !uni::is_digit(kd.cp)) all_digits = false;
            k += kd.len == 0 ? 1 : static_cast<std::size_t>(kd.len);
          }
          if (all_digits) {
            std::size_t after = skip_spaces(i + cp_len);
            if (after < n) {
              uni::Decoded ad = uni::decode(text, after);
              if (ad.len > 0 && !uni::is_upper(ad.cp)) terminal = false;
            }
          }
        }
      }
      if (terminal) {
        std::size_t end = i + cp_len;
        while (end < n) {
          uni::Decoded ed = uni::decode(text, end);
          if (ed.len > 0 && (is_terminal(ed.cp) || is_closer(ed.cp)))
            end += static_cast<std::size_t>(ed.len);
          else
            break;
        }
        emit(start, end);
        start = skip_spaces(end);
        i = start;
        in_token = false;
        prev_cp = 0;
        continue;
      }
      prev_cp = cp;
      i += cp_len;
      continue;
    }

    if (config.emoji_as_delimiter && uni::is_emoji(cp)) {
      // Extend over the whole run: emoji units and the spaces between them.
      std::size_t j = i;
      std::size_t run_end = i;
      while (j < n) {
        uni::Decoded jd = uni::decode(text, j);
        if (jd.len == 0) break;
        if (uni::is_emoji(jd.cp) || uni::is_emoji_component(jd.cp)) {
          j += static_cast<std::size_t>(jd.len);
          run_end = j;
        } else if (uni::is_space(jd.cp)) {
          j += static_cast<std::size_t>(jd.len);
        } else {
          break;
        }
      }
      bool boundary = j >= n;
      if (!boundary) {
        uni::Decoded jd = uni::decode(text, j);
        boundary = jd.len > 0 && uni::is_upper(jd.cp);
      }
      if (boundary) {
        emit(start, run_end);
        start = skip_spaces(run_end);
        i = start;
        in_token = false;
        prev_cp = 0;
      } else {
        i = run_end;
        prev_cp = 0;
      }
      continue;
    }

    prev_cp = cp;
    i += cp_len;
  }
  if (start < n) emit(start, n);
  return sentences;
}

ParagraphStats& ParagraphStats::operator+=(const ParagraphStats& other) {
  blocks_seen += other.blocks_seen;
  blocks_discarded += other.blocks_discarded;
  sentences_seen += other.sentences_seen;
  sentences_kept += other.sentences_kept;
  leading_dropped += other.leading_dropped;
  trailing_dropped += other.trailing_dropped;
  return *this;
}

namespace {

bool acceptable_start(const Sentence& s) {
  uni::Decoded d = uni::decode(s.text, 0);
  if (d.len == 0) return false;
  return uni::is_upper(d.cp) || uni::is_digit(d.cp) || is_opening_quote(d.cp);
}

bool acceptable_end(const Sentence& s, bool emoji_as_delimiter) {
  std::string_view t = s.text;
  std::size_t end = t.size();
  char32_t last = 0;
  while (end > 0) {
    std::size_t j = end;
    do {
      --j;
    } while (j > 0 && (static_cast<unsigned char>(t[j]) & 0xC0) == 0x80);
    uni::Decoded d = uni::decode(t, j);
    if (d.len == 0) return false;
    if (is_closer(d.cp)) {
      end = j;
      continue;
    }
    last = d.cp;
    break;
  }
  if (last == 0) return false;
  if (is_terminal(last)) return true;
  if (emoji_as_delimiter &&
      (uni::is_emoji(last) || uni::is_emoji_component(last)))
    return true;
  return false;
}

}  // namespace

std::vector<Paragraph> build_paragraphs(
    const std::vector<std::pair<std::string, std::vector<Sentence>>>& blocks,
    const SegmenterConfig& config, ParagraphStats* stats) {
  std::vector<Paragraph> paragraphs;
  ParagraphStats local;
  for (const auto& [doc_id, sentences] : blocks) {
    local.blocks_seen++;
    local.sentences_seen += sentences.size();
    std::size_t first = 0;
    std::size_t last = sentences.size();
    if (first < last && !acceptable_start(sentences[first])) {
      ++first;
      local.leading_dropped++;
    }
    if (first < last &&
        !acceptable_end(sentences[last - 1], config.emoji_as_delimiter)) {
      --last;
      local.trailing_dropped++;
    }
    std::size_t kept = last - first;
    if (kept < static_cast<std::size_t>(config.min_sentences)) {
      local.blocks_discarded++;
      continue;
    }
    Paragraph p;
    p.source_doc = doc_id;
    p.sentences.assign(sentences.begin() + static_cast<std::ptrdiff_t>(first),
                       sentences.begin() + static_cast<std::ptrdiff_t>(last));
    local.sentences_kept += kept;
    paragraphs.push_back(std::move(p));
  }
  if (stats != nullptr) *stats += local;
  return paragraphs;
}

std::string format_paragraphs(const std::vector<Paragraph>& paragraphs) {
  std::string out;
  bool first = true;
  for (const auto& p : paragraphs) {
    if (!first) out.push_back('\n');
    first = false;
    for (const auto& s : p.sentences) {
      out.append(s.text);
      out.push_back('\n');
    }
  }
  return out;
}

std::vector<std::vector<std::string>> parse_paragraph_file(
    std::string_view content) {
  std::vector<std::vector<std::string>> paragraphs;
  std::vector<std::string> current;
  for (auto line : util::split(content, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (!current.empty()) paragraphs.push_back(std::move(current));
      current.clear();
    } else {
      current.emplace_back(line);
    }
  }
  if (!current.empty()) paragraphs.push_back(std::move(current));
  return paragraphs;
}

}  // namespace svprep::segment

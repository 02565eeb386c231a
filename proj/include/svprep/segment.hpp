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

#ifndef SVPREP_SEGMENT_HPP_
#define SVPREP_SEGMENT_HPP_

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "svprep/lexicon.hpp"

namespace svprep::segment {

/// One sentence of a paragraph. text never contains a newline and carries no
/// leading or trailing whitespace; begin/end are byte offsets of the sentence
/// extent in the source string handed to split_sentences.
struct Sentence {
  std::string text;
  std::uint32_t begin = 0;
  std::uint32_t end = 0;

  bool operator==(const Sentence& other) const = default;
};

struct Paragraph {
  std::vector<Sentence> sentences;
  std::string source_doc;
};

struct SegmenterConfig {
  int min_sentences = 10;
  std::set<std::string> abbreviations;  // folded, trailing dot included
  bool emoji_as_delimiter = true;

  SegmenterConfig();
};

/// The stock abbreviation list (folded forms with trailing dot).
const std::set<std::string>& default_abbreviations();

/// Rejoins a block of physical lines into one logical string. A line ending
/// in "-" whose successor starts with a lowercase letter is merged without
/// the hyphen when the joined word is in the lexicon, and with the hyphen
/// kept otherwise (true compounds). All other line breaks become spaces.
std::string dehyphenate(const std::vector<std::string>& lines,
                        const Lexicon& lexicon);

/// Splits dehyphenated text into sentences. Terminal punctuation (. ! ? …)
/// ends a sentence unless it is part of a listed abbreviation, a decimal
/// number, or an ordinal; an emoji run ends a sentence only when the next
/// non-space character is uppercase or input ends there. Closing quotes and
/// brackets stay with the preceding sentence.
std::vector<Sentence> split_sentences(std::string_view text,
                                      const SegmenterConfig& config);

struct ParagraphStats {
  std::uint64_t blocks_seen = 0;
  std::uint64_t blocks_discarded = 0;
  std::uint64_t sentences_seen = 0;
  std::uint64_t sentences_kept = 0;
  std::uint64_t leading_dropped = 0;
  std::uint64_t trailing_dropped = 0;

  ParagraphStats& operator+=(const ParagraphStats& other);
};

/// Applies the boundary-fragment heuristics and the minimum-length floor:
/// a block's first sentence is dropped unless it starts with an uppercase
/// letter, digit or opening quote; the last is dropped when it lacks terminal
/// punctuation (or a terminal emoji while the emoji delimiter is active);
/// blocks left with fewer than min_sentences sentences are discarded whole.
std::vector<Paragraph> build_paragraphs(
    const std::vector<std::pair<std::string, std::vector<Sentence>>>& blocks,
    const SegmenterConfig& config, ParagraphStats* stats = nullptr);

/// One sentence per line, blank line between paragraphs.
std::string format_paragraphs(const std::vector<Paragraph>& paragraphs);

/// Inverse of format_paragraphs (paragraph texts only, spans not recovered).
std::vector<std::vector<std::string>> parse_paragraph_file(
    std::string_view content);

}  // namespace svprep::segment

#endif  // SVPREP_SEGMENT_HPP_

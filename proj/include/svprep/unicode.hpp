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

#ifndef SVPREP_UNICODE_HPP_
#define SVPREP_UNICODE_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace svprep::uni {

// Result of decoding one UTF-8 sequence. len == 0 signals an invalid or
// truncated sequence at that offset.
struct Decoded {
  char32_t cp = 0;
  int len = 0;
};

Decoded decode(std::string_view s, std::size_t pos);
void append_utf8(std::string& out, char32_t cp);
bool valid_utf8(std::string_view s);

bool is_space(char32_t cp);
bool is_digit(char32_t cp);
bool is_letter(char32_t cp);
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);
bool is_alnum(char32_t cp);

char32_t to_lower(char32_t cp);
char32_t to_upper(char32_t cp);

// Base emoji codepoints (pictographs, regional indicators, dingbat faces).
bool is_emoji(char32_t cp);
// Skin tone modifiers U+1F3FB..U+1F3FF.
bool is_skin_tone(char32_t cp);
// Codepoints that extend an emoji unit without standing alone: skin tones,
// variation selector 16, zero-width joiner, combining keycap.
bool is_emoji_component(char32_t cp);

std::string fold_case(std::string_view s);
std::string to_upper_copy(std::string_view s);

// Composes the frequent Latin letter + combining mark sequences (diaeresis,
// ring, acute, grave, circumflex, tilde, cedilla) into their precomposed
// forms. Sequences without a precomposed form are left untouched.
std::string compose_latin(std::string_view s);

}  // namespace svprep::uni

#endif  // SVPREP_UNICODE_HPP_

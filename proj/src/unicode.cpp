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

#include "svprep/unicode.hpp"

#include <array>

namespace svprep::uni {

Decoded decode(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return {};
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](std::size_t i) {
    return i < s.size() && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80;
  };
  auto bits = [&](std::size_t i) {
    return static_cast<char32_t>(static_cast<unsigned char>(s[i]) & 0x3F);
  };
  if ((b0 & 0xE0) == 0xC0) {
    if (!cont(pos + 1)) return {};
    char32_t cp = ((b0 & 0x1Fu) << 6) | bits(pos + 1);
    if (cp < 0x80) return {};  // overlong
    return {cp, 2};
  }
  if ((b0 & 0xF0) == 0xE0) {
    if (!cont(pos + 1) || !cont(pos + 2)) return {};
    char32_t cp = ((b0 & 0x0Fu) << 12) | (bits(pos + 1) << 6) | bits(pos + 2);
    if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) return {};
    return {cp, 3};
  }
  if ((b0 & 0xF8) == 0xF0) {
    if (!cont(pos + 1) || !cont(pos + 2) || !cont(pos + 3)) return {};
    char32_t cp = ((b0 & 0x07u) << 18) | (bits(pos + 1) << 12) |
                  (bits(pos + 2) << 6) | bits(pos + 3);
    if (cp < 0x10000 || cp > 0x10FFFF) return {};
    return {cp, 4};
  }
  return {};
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    Decoded d = decode(s, i);
    if (d.len == 0) return false;
    i += d.len;
  }
  return true;
}

bool is_space(char32_t cp) {
  switch (cp) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case U'\f':
    case U'\v':
    case 0x00A0:  // no-break space
    case 0x2028:  // line separator
    case 0x2029:  // paragraph separator
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

namespace {

// Latin-1 supplement letters, excluding multiplication/division signs.
bool latin1_letter(char32_t cp) {
  return (cp >= 0xC0 && cp <= 0xFF) && cp != 0xD7 && cp != 0xF7;
}

bool latin_ext(char32_t cp) { return cp >= 0x100 && cp <= 0x17F; }

}  // namespace

bool is_letter(char32_t cp) {
  if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return true;
  if (latin1_letter(cp) || latin_ext(cp)) return true;
  // Latin Extended-B and IPA extensions; coarse but adequate for the
  // European-script corpora this pipeline targets.
  if (cp >= 0x180 && cp <= 0x24F) return true;
  if (cp >= 0x370 && cp <= 0x3FF) return true;  // Greek
  if (cp >= 0x400 && cp <= 0x4FF) return true;  // Cyrillic
  return false;
}

bool is_upper(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return true;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return true;
  if (cp == 0x178) return true;  // Y with diaeresis
  if (latin_ext(cp) && cp < 0x178) return (cp % 2) == 0;
  if (cp >= 0x179 && cp <= 0x17E) return (cp % 2) == 1;
  if (cp >= 0x391 && cp <= 0x3A9) return true;
  if (cp >= 0x410 && cp <= 0x42F) return true;
  return false;
}

bool is_lower(char32_t cp) {
  if (cp >= U'a' && cp <= U'z') return true;
  if (cp >= 0xDF && cp <= 0xFF && cp != 0xF7) return true;
  if (latin_ext(cp) && cp < 0x178) return (cp % 2) == 1;
  if (cp >= 0x179 && cp <= 0x17E) return (cp % 2) == 0;
  if (cp >= 0x3B1 && cp <= 0x3C9) return true;
  if (cp >= 0x430 && cp <= 0x44F) return true;
  return false;
}

bool is_alnum(char32_t cp) { return is_letter(cp) || is_digit(cp); }

char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp == 0x178) return 0xFF;
  if (latin_ext(cp) && cp < 0x178 && (cp % 2) == 0) return cp + 1;
  if (cp >= 0x179 && cp <= 0x17D && (cp % 2) == 1) return cp + 1;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  return cp;
}

char32_t to_upper(char32_t cp) {
  if (cp >= U'a' && cp <= U'z') return cp - 0x20;
  if (cp >= 0xE0 && cp <= 0xFE && cp != 0xF7) return cp - 0x20;
  if (cp == 0xFF) return 0x178;
  if (latin_ext(cp) && cp < 0x178 && (cp % 2) == 1) return cp - 1;
  if (cp >= 0x17A && cp <= 0x17E && (cp % 2) == 0) return cp - 1;
  if (cp >= 0x3B1 && cp <= 0x3C9 && cp != 0x3C2) return cp - 0x20;
  if (cp >= 0x430 && cp <= 0x44F) return cp - 0x20;
  return cp;
}

bool is_emoji(char32_t cp) {
  if (cp >= 0x1F300 && cp <= 0x1F6FF) return true;  // pictographs, transport
  if (cp >= 0x1F900 && cp <= 0x1F9FF) return true;  // supplemental symbols
  if (cp >= 0x1FA70 && cp <= 0x1FAFF) return true;  // extended-A
  if (cp >= 0x1F1E6 && cp <= 0x1F1FF) return true;  // regional indicators
  if (cp >= 0x2600 && cp <= 0x27BF) return true;    // misc symbols, dingbats
  if (cp >= 0x2B00 && cp <= 0x2B55) return true;    // arrows, stars
  if (cp >= 0x231A && cp <= 0x231B) return true;    // watch, hourglass
  if (cp >= 0x23E9 && cp <= 0x23FA) return true;    // av controls
  if (cp == 0x1F004 || cp == 0x1F0CF) return true;  // mahjong, joker
  return false;
}

bool is_skin_tone(char32_t cp) { return cp >= 0x1F3FB && cp <= 0x1F3FF; }

bool is_emoji_component(char32_t cp) {
  return is_skin_tone(cp) || cp == 0xFE0F || cp == 0x200D || cp == 0x20E3;
}

std::string fold_case(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    Decoded d = decode(s, i);
    if (d.len == 0) {
      out.push_back(s[i++]);
      continue;
    }
    append_utf8(out, to_lower(d.cp));
    i += d.len;
  }
  return out;
}

std::string to_upper_copy(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    Decoded d = decode(s, i);
    if (d.len == 0) {
      out.push_back(s[i++]);
      continue;
    }
    append_utf8(out, to_upper(d.cp));
    i += d.len;
  }
  return out;
}

namespace {

// letter + combining mark -> precomposed, for the marks that actually occur
// in the target corpora.
char32_t compose_pair(char32_t base, char32_t mark) {
  switch (mark) {
    case 0x0300:  // grave
      switch (base) {
        case U'A': return 0xC0; case U'E': return 0xC8; case U'I': return 0xCC;
        case U'O': return 0xD2; case U'U': return 0xD9;
        case U'a': return 0xE0; case U'e': return 0xE8; case U'i': return 0xEC;
        case U'o': return 0xF2; case U'u': return 0xF9;
      }
      break;
    case 0x0301:  // acute
      switch (base) {
        case U'A': return 0xC1; case U'E': return 0xC9; case U'I': return 0xCD;
        case U'O': return 0xD3; case U'U': return 0xDA; case U'Y': return 0xDD;
        case U'a': return 0xE1; case U'e': return 0xE9; case U'i': return 0xED;
        case U'o': return 0xF3; case U'u': return 0xFA; case U'y': return 0xFD;
      }
      break;
    case 0x0302:  // circumflex
      switch (base) {
        case U'A': return 0xC2; case U'E': return 0xCA; case U'I': return 0xCE;
        case U'O': return 0xD4; case U'U': return 0xDB;
        case U'a': return 0xE2; case U'e': return 0xEA; case U'i': return 0xEE;
        case U'o': return 0xF4; case U'u': return 0xFB;
      }
      break;
    case 0x0303:  // tilde
      switch (base) {
        case U'A': return 0xC3; case U'N': return 0xD1; case U'O': return 0xD5;
        case U'a': return 0xE3; case U'n': return 0xF1; case U'o': return 0xF5;
      }
      break;
    case 0x0308:  // diaeresis
      switch (base) {
        case U'A': return 0xC4; case U'E': return 0xCB; case U'I': return 0xCF;
        case U'O': return 0xD6; case U'U': return 0xDC;
        case U'a': return 0xE4; case U'e': return 0xEB; case U'i': return 0xEF;
        case U'o': return 0xF6; case U'u': return 0xFC; case U'y': return 0xFF;
      }
      break;
    case 0x030A:  // ring above
      switch (base) {
        case U'A': return 0xC5; case U'a': return 0xE5;
        case U'U': return 0x16E; case U'u': return 0x16F;
      }
      break;
    case 0x0327:  // cedilla
      switch (base) {
        case U'C': return 0xC7; case U'c': return 0xE7;
      }
      break;
    default:
      break;
  }
  return 0;
}

}  // namespace

std::string compose_latin(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  char32_t pending = 0;  // last decoded cp, not yet emitted
  bool has_pending = false;
  while (i < s.size()) {
    Decoded d = decode(s, i);
    if (d.len == 0) {
      if (has_pending) append_utf8(out, pending);
      has_pending = false;
      out.push_back(s[i++]);
      continue;
    }
    i += d.len;
    if (has_pending) {
      char32_t composed = compose_pair(pending, d.cp);
      if (composed != 0) {
        pending = composed;
        continue;
      }
      append_utf8(out, pending);
    }
    pending = d.cp;
    has_pending = true;
  }
  if (has_pending) append_utf8(out, pending);
  return out;
}

}  // namespace svprep::uni

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "svprep/rng.hpp"
#include "svprep/unicode.hpp"

namespace uni = svprep::uni;

TEST_CASE("decode and append round-trip across sequence lengths") {
  const char32_t cps[] = {U'a', U'ö', U'…', U'\U0001F600',
                          U'\U0001F3FD'};
  for (char32_t cp : cps) {
    std::string buf;
    uni::append_utf8(buf, cp);
    uni::Decoded d = uni::decode(buf, 0);
    CHECK(d.len == static_cast<int>(buf.size()));
    CHECK(d.cp == cp);
  }
}

TEST_CASE("decode round-trips random codepoints") {
  svprep::Rng rng(11);
  int tested = 0;
  while (tested < 2000) {
    char32_t cp = static_cast<char32_t>(rng.below(0x110000));
    if (cp >= 0xD800 && cp <= 0xDFFF) continue;
    std::string buf;
    uni::append_utf8(buf, cp);
    uni::Decoded d = uni::decode(buf, 0);
    CHECK(d.cp == cp);
    CHECK(d.len == static_cast<int>(buf.size()));
    CHECK(uni::valid_utf8(buf));
    ++tested;
  }
}

TEST_CASE("invalid bytes are rejected") {
  CHECK(uni::decode("\xff", 0).len == 0);
  CHECK(uni::decode("\xc3", 0).len == 0);          // truncated two-byte
  CHECK(uni::decode("\x80", 0).len == 0);          // stray continuation
  CHECK(uni::decode("\xe2\x82", 0).len == 0);      // truncated three-byte
  CHECK_FALSE(uni::valid_utf8("abc\xff"));
  CHECK_FALSE(uni::valid_utf8("\xc3"));
  CHECK(uni::valid_utf8("abc \xc3\xb6 \xf0\x9f\x98\x80"));
  CHECK(uni::valid_utf8(""));
}

TEST_CASE("character classes cover Swedish letters") {
  for (char32_t cp : {U'a', U'z', U'å', U'ä', U'ö'}) {
    CHECK(uni::is_letter(cp));
    CHECK(uni::is_lower(cp));
    CHECK_FALSE(uni::is_upper(cp));
  }
  for (char32_t cp : {U'A', U'Z', U'Å', U'Ä', U'Ö'}) {
    CHECK(uni::is_letter(cp));
    CHECK(uni::is_upper(cp));
    CHECK_FALSE(uni::is_lower(cp));
  }
  CHECK(uni::is_digit(U'7'));
  CHECK(uni::is_alnum(U'7'));
  CHECK(uni::is_alnum(U'ö'));
  CHECK_FALSE(uni::is_letter(U'7'));
  CHECK_FALSE(uni::is_alnum(U'.'));
  CHECK_FALSE(uni::is_letter(U'\U0001F600'));
}

TEST_CASE("whitespace includes the typographic blanks") {
  for (char32_t cp : {U' ', U'\t', U'\n', U'\r'}) CHECK(uni::is_space(cp));
  CHECK(uni::is_space(0x00A0));
  CHECK(uni::is_space(0x2009));
  CHECK_FALSE(uni::is_space(U'x'));
  CHECK_FALSE(uni::is_space(U'\U0001F600'));
}

TEST_CASE("case mapping handles ASCII and Latin-1 letters") {
  CHECK(uni::to_lower(U'A') == U'a');
  CHECK(uni::to_upper(U'a') == U'A');
  CHECK(uni::to_lower(U'Ö') == U'ö');
  CHECK(uni::to_upper(U'å') == U'Å');
  CHECK(uni::to_lower(U'7') == U'7');
  CHECK(uni::fold_case("ÖRN") == "örn");
  CHECK(uni::to_upper_copy("örn") == "ÖRN");
  CHECK(uni::fold_case("Hej Då") == "hej då");
}

TEST_CASE("emoji classes match the segmentation rules") {
  CHECK(uni::is_emoji(U'\U0001F600'));  // grinning face
  CHECK(uni::is_emoji(U'☹'));      // frowning face
  CHECK_FALSE(uni::is_emoji(U'a'));
  CHECK_FALSE(uni::is_emoji(U'.'));
  for (char32_t cp = 0x1F3FB; cp <= 0x1F3FF; ++cp) {
    CHECK(uni::is_skin_tone(cp));
    CHECK(uni::is_emoji_component(cp));
  }
  CHECK_FALSE(uni::is_skin_tone(U'\U0001F600'));
  CHECK(uni::is_emoji_component(0xFE0F));  // variation selector 16
  CHECK(uni::is_emoji_component(0x200D));  // zero width joiner
  CHECK_FALSE(uni::is_emoji_component(U'a'));
}

TEST_CASE("compose_latin joins combining marks onto their base") {
  CHECK(uni::compose_latin("ö") == "ö");
  CHECK(uni::compose_latin("å") == "å");
  CHECK(uni::compose_latin("Ä") == "Ä");
  CHECK(uni::compose_latin("é") == "é");
  CHECK(uni::compose_latin("ç") == "ç");
  CHECK(uni::compose_latin("smörgås") == "smörgås");
  CHECK(uni::compose_latin("hörn") == "hörn");
}

TEST_CASE("compose_latin leaves unpairable marks alone") {
  CHECK(uni::compose_latin("ẍ") == "ẍ");
  CHECK(uni::compose_latin("̈") == "̈");
  CHECK(uni::compose_latin("") == "");
  CHECK(uni::compose_latin("abc") == "abc");
}

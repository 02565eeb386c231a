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

#include "svprep/lexicon.hpp"

#include <fstream>

#include "svprep/unicode.hpp"
#include "svprep/util.hpp"

namespace svprep {

Lexicon::Lexicon(std::initializer_list<std::string_view> forms) {
  for (auto f : forms) add(f);
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot read lexicon: " + path.string());
  Lexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto word = util::trim(line);
    if (!word.empty()) lex.add(word);
  }
  return lex;
}

void Lexicon::add(std::string_view form) {
  forms_.emplace(uni::fold_case(form), std::string(form));
}

bool Lexicon::contains(std::string_view form) const {
  return forms_.find(uni::fold_case(form)) != forms_.end();
}

std::string Lexicon::canonical(std::string_view form) const {
  auto it = forms_.find(uni::fold_case(form));
  return it == forms_.end() ? std::string() : it->second;
}

}  // namespace svprep

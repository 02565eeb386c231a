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

#ifndef SVPREP_LEXICON_HPP_
#define SVPREP_LEXICON_HPP_

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <unordered_map>

namespace svprep {

/// Read-only set of valid word forms. Membership is case-insensitive at the
/// fold level; the first casing seen for a form is kept as its canonical
/// spelling. Immutable once built, safe to share across threads.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::initializer_list<std::string_view> forms);

  static Lexicon load(const std::filesystem::path& path);

  void add(std::string_view form);

  bool contains(std::string_view form) const;
  // Canonical (first-seen) casing for a form, or empty if absent.
  std::string canonical(std::string_view form) const;

  std::size_t size() const { return forms_.size(); }
  bool empty() const { return forms_.empty(); }

 private:
  std::unordered_map<std::string, std::string> forms_;  // folded -> original
};

}  // namespace svprep

#endif  // SVPREP_LEXICON_HPP_

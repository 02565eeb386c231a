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

#ifndef SVPREP_UTIL_HPP_
#define SVPREP_UTIL_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace svprep {

// Bad user input: unusable config, missing paths, malformed option values.
// The CLI maps this to exit code 2.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure while a stage is running (unreadable data, broken invariants).
// The CLI maps this to exit code 1.
class stage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace util {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);
std::vector<std::string> read_lines(const std::filesystem::path& path);

std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string> split_ws(std::string_view s);
std::string_view trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

// FNV-1a, 64 bit. Used for artifact digests in run manifests; determinism
// checking, not integrity protection.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);
std::string digest_file(const std::filesystem::path& path);

// Integer with space-grouped thousands, e.g. 2997132 -> "2 997 132".
std::string group_thousands(std::uint64_t v);

}  // namespace util
}  // namespace svprep

#endif  // SVPREP_UTIL_HPP_

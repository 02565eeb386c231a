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

#ifndef SVPREP_INGEST_HPP_
#define SVPREP_INGEST_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "svprep/segment.hpp"

namespace svprep::ingest {

enum class SourceTag { news, sou, edeposit, social, wiki, other };

const char* to_string(SourceTag tag);
SourceTag parse_source_tag(std::string_view name);

enum class SourceFormat {
  plain,    // one document per .txt file
  records,  // one document per nonempty line (.docs)
};

struct RawDocument {
  std::string id;  // source path, plus ":<record>" for record files
  SourceTag source_tag = SourceTag::other;
  std::string text;
};

struct SourceSpec {
  std::filesystem::path path;
  SourceTag tag = SourceTag::other;
  SourceFormat format = SourceFormat::plain;
};

struct SkipRecord {
  std::string id;
  std::string reason;
};

struct LoadReport {
  std::uint64_t loaded = 0;
  std::vector<SkipRecord> skipped;
};

using DocumentSink = std::function<void(RawDocument&&)>;

/// Streams documents from one source in deterministic order: files sorted
/// lexicographically by path, records by line index. Text is validated as
/// UTF-8 (violations skip the document and land in the report) and common
/// Latin combining sequences are composed. Unreadable paths are hard errors.
LoadReport load_documents(const SourceSpec& spec, const DocumentSink& sink);

/// Convenience wrapper collecting the whole stream.
std::pair<std::vector<RawDocument>, LoadReport> load_all(
    const SourceSpec& spec);

/// The files a directory source would visit, in emission order.
std::vector<std::filesystem::path> list_source_files(const SourceSpec& spec);

struct Counters {
  std::uint64_t words = 0;
  std::uint64_t sentences = 0;
  std::uint64_t bytes = 0;

  Counters& operator+=(const Counters& other);
  bool operator==(const Counters& other) const = default;
};

struct CorpusStats {
  std::map<SourceTag, Counters> per_source;

  Counters totals() const;
  CorpusStats& operator+=(const CorpusStats& other);
  bool operator==(const CorpusStats& other) const = default;
};

/// Word, sentence and byte counts for one document. Words are
/// whitespace-delimited tokens; sentences come from the segment splitter.
Counters count_document(const RawDocument& doc,
                        const segment::SegmenterConfig& segmenter);

CorpusStats compute_stats(const std::vector<RawDocument>& documents,
                          const segment::SegmenterConfig& segmenter);

/// Aligned plain-text table with Words / Sentences / Size columns, one row
/// per source and a totals row. Size is bytes / 2^20.
std::string format_stats_table(const CorpusStats& stats);

/// One key-value record per source plus totals (JSON lines).
std::string format_stats_records(const CorpusStats& stats);

}  // namespace svprep::ingest

#endif  // SVPREP_INGEST_HPP_

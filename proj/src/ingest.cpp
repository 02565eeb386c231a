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

#include "svprep/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "svprep/unicode.hpp"
#include "svprep/util.hpp"

namespace svprep::ingest {

namespace fs = std::filesystem;

const char* to_string(SourceTag tag) {
  switch (tag) {
    case SourceTag::news: return "news";
    case SourceTag::sou: return "sou";
    case SourceTag::edeposit: return "edeposit";
    case SourceTag::social: return "social";
    case SourceTag::wiki: return "wiki";
    case SourceTag::other: return "other";
  }
  return "other";
}

SourceTag parse_source_tag(std::string_view name) {
  if (name == "news") return SourceTag::news;
  if (name == "sou") return SourceTag::sou;
  if (name == "edeposit") return SourceTag::edeposit;
  if (name == "social") return SourceTag::social;
  if (name == "wiki") return SourceTag::wiki;
  if (name == "other") return SourceTag::other;
  throw config_error("unknown source tag: " + std::string(name));
}

std::vector<fs::path> list_source_files(const SourceSpec& spec) {
  std::vector<fs::path> files;
  if (!fs::exists(spec.path))
    throw config_error("source path does not exist: " + spec.path.string());
  if (fs::is_regular_file(spec.path)) {
    files.push_back(spec.path);
    return files;
  }
  const std::string want_ext =
      spec.format == SourceFormat::plain ? ".txt" : ".docs";
  for (const auto& entry : fs::recursive_directory_iterator(spec.path)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().extension() == want_ext) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.generic_string() < b.generic_string();
            });
  return files;
}

namespace {

// Validate, then compose combining sequences. Returns false on bad UTF-8.
bool clean_text(std::string& text) {
  if (!uni::valid_utf8(text)) return false;
  text = uni::compose_latin(text);
  return true;
}

}  // namespace

LoadReport load_documents(const SourceSpec& spec, const DocumentSink& sink) {
  LoadReport report;
  for (const auto& file : list_source_files(spec)) {
    std::string content;
    try {
      content = util::read_file(file);
    } catch (const stage_error&) {
      throw stage_error("unreadable input file: " + file.string());
    }
    const std::string file_id = file.generic_string();
    if (spec.format == SourceFormat::plain) {
      if (content.empty()) continue;
      if (!clean_text(content)) {
        report.skipped.push_back({file_id, "invalid UTF-8"});
        continue;
      }
      report.loaded++;
      sink(RawDocument{file_id, spec.tag, std::move(content)});
    } else {
      std::size_t record = 0;
      for (auto line : util::split(content, '\n')) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (util::trim(line).empty()) continue;
        std::string text(line);
        std::string id = file_id + ":" + std::to_string(record);
        ++record;
        if (!clean_text(text)) {
          report.skipped.push_back({id, "invalid UTF-8"});
          continue;
        }
        report.loaded++;
        sink(RawDocument{std::move(id), spec.tag, std::move(text)});
      }
    }
  }
  return report;
}

std::pair<std::vector<RawDocument>, LoadReport> load_all(
    const SourceSpec& spec) {
  std::vector<RawDocument> docs;
  LoadReport report =
      load_documents(spec, [&](RawDocument&& d) { docs.push_back(std::move(d)); });
  return {std::move(docs), std::move(report)};
}

Counters& Counters::operator+=(const Counters& other) {
  words += other.words;
  sentences += other.sentences;
  bytes += other.bytes;
  return *this;
}

Counters CorpusStats::totals() const {
  Counters t;
  for (const auto& [tag, c] : per_source) t += c;
  return t;
}

CorpusStats& CorpusStats::operator+=(const CorpusStats& other) {
  for (const auto& [tag, c] : other.per_source) per_source[tag] += c;
  return *this;
}

Counters count_document(const RawDocument& doc,
                        const segment::SegmenterConfig& segmenter) {
  Counters c;
  c.bytes = doc.text.size();
  std::string_view t = doc.text;
  std::size_t i = 0;
  bool in_word = false;
  while (i < t.size()) {
    uni::Decoded d = uni::decode(t, i);
    std::size_t len = d.len == 0 ? 1 : static_cast<std::size_t>(d.len);
    bool space = d.len != 0 && uni::is_space(d.cp);
    if (space) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      c.words++;
    }
    i += len;
  }
  c.sentences = segment::split_sentences(doc.text, segmenter).size();
  return c;
}

CorpusStats compute_stats(const std::vector<RawDocument>& documents,
                          const segment::SegmenterConfig& segmenter) {
  CorpusStats stats;
  for (const auto& doc : documents)
    stats.per_source[doc.source_tag] += count_document(doc, segmenter);
  return stats;
}

namespace {

std::string format_mb(std::uint64_t bytes) {
  double mb = static_cast<double>(bytes) / (1024.0 * 1024.0);
  char buf[48];
  if (mb >= 100.0)
    std::snprintf(buf, sizeof(buf), "%.0fMB", mb);
  else
    std::snprintf(buf, sizeof(buf), "%.2fMB", mb);
  return buf;
}

}  // namespace

std::string format_stats_table(const CorpusStats& stats) {
  struct Row {
    std::string name, words, sentences, size;
  };
  std::vector<Row> rows;
  rows.push_back({"Corpus", "Words", "Sentences", "Size"});
  for (const auto& [tag, c] : stats.per_source) {
    rows.push_back({to_string(tag), util::group_thousands(c.words),
                    util::group_thousands(c.sentences), format_mb(c.bytes)});
  }
  Counters t = stats.totals();
  rows.push_back({"Total", util::group_thousands(t.words),
                  util::group_thousands(t.sentences), format_mb(t.bytes)});

  std::size_t w0 = 0, w1 = 0, w2 = 0, w3 = 0;
  for (const auto& r : rows) {
    w0 = std::max(w0, r.name.size());
    w1 = std::max(w1, r.words.size());
    w2 = std::max(w2, r.sentences.size());
    w3 = std::max(w3, r.size.size());
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << r.name << std::string(w0 - r.name.size(), ' ');
    out << "  " << std::string(w1 - r.words.size(), ' ') << r.words;
    out << "  " << std::string(w2 - r.sentences.size(), ' ') << r.sentences;
    out << "  " << std::string(w3 - r.size.size(), ' ') << r.size << '\n';
    if (i == 0 || i + 2 == rows.size()) {
      out << std::string(w0 + w1 + w2 + w3 + 6, '-') << '\n';
    }
  }
  return std::move(out).str();
}

std::string format_stats_records(const CorpusStats& stats) {
  std::ostringstream out;
  auto record = [&](const std::string& name, const Counters& c) {
    out << "{\"corpus\":\"" << name << "\",\"words\":" << c.words
        << ",\"sentences\":" << c.sentences << ",\"bytes\":" << c.bytes
        << "}\n";
  };
  for (const auto& [tag, c] : stats.per_source) record(to_string(tag), c);
  record("total", stats.totals());
  return std::move(out).str();
}

}  // namespace svprep::ingest

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

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "svprep/ingest.hpp"
#include "svprep/segment.hpp"
#include "svprep/util.hpp"

namespace fs = std::filesystem;
using namespace svprep;

namespace {

struct TempTree {
  fs::path root;

  TempTree() {
    root = fs::temp_directory_path() /
           ("svprep_ingest_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(root);
  }
  ~TempTree() { fs::remove_all(root); }

  static int& counter() {
    static int c = 0;
    return c;
  }

  fs::path file(const std::string& name, const std::string& content) {
    fs::path p = root / name;
    fs::create_directories(p.parent_path());
    util::write_file(p, content);
    return p;
  }
};

}  // namespace

TEST_CASE("source tags round-trip through their names") {
  using ingest::SourceTag;
  for (SourceTag tag : {SourceTag::news, SourceTag::sou, SourceTag::edeposit,
                        SourceTag::social, SourceTag::wiki, SourceTag::other}) {
    CHECK(ingest::parse_source_tag(ingest::to_string(tag)) == tag);
  }
  CHECK_THROWS_AS(ingest::parse_source_tag("tidningar"), config_error);
}

TEST_CASE("plain directories load in lexicographic path order") {
  TempTree tree;
  tree.file("b.txt", "Andra dokumentet.");
  tree.file("a.txt", "Första dokumentet.");
  tree.file("nested/c.txt", "Tredje dokumentet.");
  ingest::SourceSpec spec{tree.root, ingest::SourceTag::news,
                          ingest::SourceFormat::plain};
  auto [docs, report] = ingest::load_all(spec);
  REQUIRE(docs.size() == 3);
  CHECK(report.loaded == 3);
  CHECK(report.skipped.empty());
  CHECK(docs[0].text == "Första dokumentet.");
  CHECK(docs[1].text == "Andra dokumentet.");
  CHECK(docs[2].text == "Tredje dokumentet.");
  CHECK(docs[0].id < docs[1].id);
  CHECK(docs[0].source_tag == ingest::SourceTag::news);
}

TEST_CASE("record files yield one document per nonempty line") {
  TempTree tree;
  fs::path p = tree.file("feed.docs", "rad ett\n\nrad två\nrad tre\n");
  ingest::SourceSpec spec{p, ingest::SourceTag::social,
                          ingest::SourceFormat::records};
  auto [docs, report] = ingest::load_all(spec);
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].text == "rad ett");
  CHECK(docs[1].text == "rad två");
  CHECK(docs[2].text == "rad tre");
  CHECK(docs[0].id != docs[1].id);
  CHECK(report.loaded == 3);
}

TEST_CASE("empty files yield zero documents") {
  TempTree tree;
  fs::path p = tree.file("empty.txt", "");
  ingest::SourceSpec spec{p, ingest::SourceTag::other,
                          ingest::SourceFormat::plain};
  auto [docs, report] = ingest::load_all(spec);
  CHECK(docs.empty());
  CHECK(report.loaded == 0);
}

TEST_CASE("invalid UTF-8 skips the document and reports it") {
  TempTree tree;
  tree.file("bad.txt", std::string("trasig \xff byte"));
  tree.file("good.txt", "hel text här");
  ingest::SourceSpec spec{tree.root, ingest::SourceTag::news,
                          ingest::SourceFormat::plain};
  auto [docs, report] = ingest::load_all(spec);
  REQUIRE(docs.size() == 1);
  CHECK(docs[0].text == "hel text här");
  REQUIRE(report.skipped.size() == 1);
  CHECK(report.skipped[0].id.find("bad.txt") != std::string::npos);
}

TEST_CASE("invalid record is skipped without losing its neighbors") {
  TempTree tree;
  fs::path p = tree.file("feed.docs", std::string("bra\nd\xe5lig\nbra igen\n"));
  ingest::SourceSpec spec{p, ingest::SourceTag::social,
                          ingest::SourceFormat::records};
  auto [docs, report] = ingest::load_all(spec);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].text == "bra");
  CHECK(docs[1].text == "bra igen");
  CHECK(report.skipped.size() == 1);
}

TEST_CASE("missing path is a hard error naming the path") {
  ingest::SourceSpec spec{fs::path("/no/such/corpus"),
                          ingest::SourceTag::news,
                          ingest::SourceFormat::plain};
  CHECK_THROWS_WITH_AS(ingest::load_all(spec),
                       doctest::Contains("/no/such/corpus"), config_error);
}

TEST_CASE("counting matches a hand count") {
  ingest::RawDocument doc{"d", ingest::SourceTag::news, "Hej. Hej då."};
  segment::SegmenterConfig segcfg;
  ingest::Counters c = ingest::count_document(doc, segcfg);
  CHECK(c.words == 3);
  CHECK(c.sentences == 2);
  CHECK(c.bytes == doc.text.size());
}

TEST_CASE("stats are additive across sources") {
  segment::SegmenterConfig segcfg;
  std::vector<ingest::RawDocument> a = {
      {"a0", ingest::SourceTag::news, "En mening här. Och en till."}};
  std::vector<ingest::RawDocument> b = {
      {"b0", ingest::SourceTag::social, "Bara en rad."},
      {"b1", ingest::SourceTag::social, "Två rader. Blev det."}};
  ingest::CorpusStats sa = ingest::compute_stats(a, segcfg);
  ingest::CorpusStats sb = ingest::compute_stats(b, segcfg);
  std::vector<ingest::RawDocument> both = a;
  both.insert(both.end(), b.begin(), b.end());
  ingest::CorpusStats sboth = ingest::compute_stats(both, segcfg);
  ingest::CorpusStats merged = sa;
  merged += sb;
  CHECK(merged == sboth);
  CHECK(sboth.totals().words ==
        sa.totals().words + sb.totals().words);
  CHECK(ingest::compute_stats({}, segcfg).totals() == ingest::Counters{});
}

TEST_CASE("stats table lists sources and a total row") {
  segment::SegmenterConfig segcfg;
  std::vector<ingest::RawDocument> docs = {
      {"a", ingest::SourceTag::news, "Hej. Hej då."},
      {"b", ingest::SourceTag::wiki, "En artikel om sjöar."}};
  ingest::CorpusStats stats = ingest::compute_stats(docs, segcfg);
  std::string table = ingest::format_stats_table(stats);
  CHECK(table.find("news") != std::string::npos);
  CHECK(table.find("wiki") != std::string::npos);
  CHECK(table.find("Total") != std::string::npos);
  CHECK(table.find("Words") != std::string::npos);
  CHECK(table.find("Sentences") != std::string::npos);
  CHECK(table.find("Size") != std::string::npos);
  std::string records = ingest::format_stats_records(stats);
  CHECK(records.find("\"corpus\":\"news\"") != std::string::npos);
  CHECK(records.find("\"corpus\":\"total\"") != std::string::npos);
  CHECK(records.find("\"words\":") != std::string::npos);
}

TEST_CASE("two loads of the same tree are identical") {
  TempTree tree;
  tree.file("x.txt", "Lika varje gång.");
  tree.file("y.txt", "Andra filen.");
  ingest::SourceSpec spec{tree.root, ingest::SourceTag::news,
                          ingest::SourceFormat::plain};
  auto [docs1, r1] = ingest::load_all(spec);
  auto [docs2, r2] = ingest::load_all(spec);
  REQUIRE(docs1.size() == docs2.size());
  for (std::size_t i = 0; i < docs1.size(); ++i) {
    CHECK(docs1[i].id == docs2[i].id);
    CHECK(docs1[i].text == docs2[i].text);
  }
}

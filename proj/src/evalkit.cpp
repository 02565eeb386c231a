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

#include "svprep/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"
#include "svprep/rng.hpp"
#include "svprep/util.hpp"

namespace svprep::evalkit {

namespace {

struct BioTag {
  char marker = 'O';  // 'B', 'I' or 'O'
  std::string_view type;
};

BioTag parse_bio(std::string_view tag) {
  if (tag == "O") return {};
  if (tag.size() >= 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-')
    return {tag[0], tag.substr(2)};
  return {};  // outside the BIO shape, treated as O
}

}  // namespace

int repair_bio(TaggedSequence& sequence) {
  int repairs = 0;
  std::string_view open_type;
  for (auto& token : sequence.tokens) {
    BioTag t = parse_bio(token.tag);
    if (t.marker == 'I') {
      if (open_type != t.type) {
        token.tag[0] = 'B';
        ++repairs;
        t.marker = 'B';
      }
    }
    open_type = t.marker == 'O' ? std::string_view() : t.type;
  }
  return repairs;
}

namespace {

std::vector<TaggedSequence> finish_parse(std::vector<TaggedSequence> seqs,
                                         const LoadOptions& options) {
  if (options.scheme != Scheme::bio) return seqs;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    if (options.strict) {
      TaggedSequence copy = seqs[i];
      if (repair_bio(copy) != 0)
        throw stage_error("sequence " + std::to_string(i) +
                          ": I- tag without a matching B-/I- predecessor");
    } else {
      repair_bio(seqs[i]);
    }
  }
  return seqs;
}

template <typename PerLine>
void scan_tagged(std::string_view content, std::size_t columns,
                 PerLine per_line) {
  std::size_t lineno = 0;
  for (auto line : util::split(content, '\n')) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (util::trim(line).empty()) {
      per_line(lineno, std::vector<std::string_view>{});
      continue;
    }
    auto fields = util::split(line, '\t');
    if (fields.size() != columns)
      throw stage_error("tagged file line " + std::to_string(lineno) +
                        ": expected " + std::to_string(columns) +
                        " tab-separated fields, got " +
                        std::to_string(fields.size()));
    per_line(lineno, fields);
  }
}

}  // namespace

std::vector<TaggedSequence> parse_tagged(std::string_view content,
                                         const LoadOptions& options) {
  std::vector<TaggedSequence> seqs;
  TaggedSequence current;
  scan_tagged(content, 2,
              [&](std::size_t, const std::vector<std::string_view>& fields) {
                if (fields.empty()) {
                  if (!current.tokens.empty())
                    seqs.push_back(std::move(current));
                  current = {};
                  return;
                }
                current.tokens.push_back(
                    {std::string(fields[0]), std::string(fields[1])});
              });
  if (!current.tokens.empty()) seqs.push_back(std::move(current));
  return finish_parse(std::move(seqs), options);
}

std::vector<TaggedSequence> load_tagged_file(const std::filesystem::path& path,
                                             const LoadOptions& options) {
  return parse_tagged(util::read_file(path), options);
}

GoldPred parse_tagged_pair(std::string_view content,
                           const LoadOptions& options) {
  GoldPred out;
  TaggedSequence gold_current;
  TaggedSequence pred_current;
  scan_tagged(content, 3,
              [&](std::size_t, const std::vector<std::string_view>& fields) {
                if (fields.empty()) {
                  if (!gold_current.tokens.empty()) {
                    out.gold.push_back(std::move(gold_current));
                    out.pred.push_back(std::move(pred_current));
                  }
                  gold_current = {};
                  pred_current = {};
                  return;
                }
                gold_current.tokens.push_back(
                    {std::string(fields[0]), std::string(fields[1])});
                pred_current.tokens.push_back(
                    {std::string(fields[0]), std::string(fields[2])});
              });
  if (!gold_current.tokens.empty()) {
    out.gold.push_back(std::move(gold_current));
    out.pred.push_back(std::move(pred_current));
  }
  out.gold = finish_parse(std::move(out.gold), options);
  out.pred = finish_parse(std::move(out.pred), options);
  return out;
}

std::string format_tagged(const std::vector<TaggedSequence>& sequences) {
  std::string out;
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    if (i > 0) out.push_back('\n');
    for (const auto& token : sequences[i].tokens) {
      out.append(token.surface);
      out.push_back('\t');
      out.append(token.tag);
      out.push_back('\n');
    }
  }
  return out;
}

void SplitSpec::validate() const {
  if (train_ratio < 0.0 || test_ratio < 0.0 || eval_ratio < 0.0 ||
      std::abs(train_ratio + test_ratio + eval_ratio - 1.0) > 1e-9)
    throw config_error("split ratios must be nonnegative and sum to 1");
}

SplitResult split_dataset(const std::vector<TaggedSequence>& sequences,
                          const SplitSpec& spec) {
  spec.validate();
  std::size_t n = sequences.size();
  if (n < 3)
    throw stage_error("need at least 3 sequences to split, got " +
                      std::to_string(n));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(spec.seed);
  rng.shuffle(order);
  // The epsilon keeps exact products like 10 * 0.7 from flooring low.
  auto cut = [n](double ratio) {
    return static_cast<std::size_t>(static_cast<double>(n) * ratio + 1e-9);
  };
  std::size_t c1 = cut(spec.train_ratio);
  std::size_t c2 = cut(spec.train_ratio + spec.test_ratio);
  SplitResult result;
  for (std::size_t i = 0; i < n; ++i) {
    const TaggedSequence& seq = sequences[order[i]];
    if (i < c1) {
      result.train.push_back(seq);
    } else if (i < c2) {
      result.test.push_back(seq);
    } else {
      result.eval.push_back(seq);
    }
  }
  return result;
}

std::vector<Chunk> extract_chunks(const TaggedSequence& sequence) {
  std::vector<Chunk> chunks;
  Chunk open;
  bool has_open = false;
  auto close = [&](std::size_t end) {
    if (has_open) {
      open.end = end;
      chunks.push_back(open);
      has_open = false;
    }
  };
  for (std::size_t i = 0; i < sequence.tokens.size(); ++i) {
    BioTag t = parse_bio(sequence.tokens[i].tag);
    if (t.marker == 'O') {
      close(i);
    } else if (t.marker == 'B' || !has_open || open.type != t.type) {
      close(i);
      open = {std::string(t.type), i, i};
      has_open = true;
    }
  }
  close(sequence.tokens.size());
  return chunks;
}

namespace {

void check_alignment(const std::vector<TaggedSequence>& gold,
                     const std::vector<TaggedSequence>& pred) {
  if (gold.size() != pred.size())
    throw stage_error("gold has " + std::to_string(gold.size()) +
                      " sequences, predictions have " +
                      std::to_string(pred.size()));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].tokens.size() != pred[i].tokens.size())
      throw stage_error("sequence " + std::to_string(i) + ": gold has " +
                        std::to_string(gold[i].tokens.size()) +
                        " tokens, prediction has " +
                        std::to_string(pred[i].tokens.size()));
  }
}

void fill_rates(ScoreRow& row) {
  double p_den = static_cast<double>(row.tp + row.fp);
  double r_den = static_cast<double>(row.tp + row.fn);
  row.precision = p_den == 0.0 ? 0.0 : static_cast<double>(row.tp) / p_den;
  row.recall = r_den == 0.0 ? 0.0 : static_cast<double>(row.tp) / r_den;
  double pr = row.precision + row.recall;
  row.f1 = pr == 0.0 ? 0.0 : 2.0 * row.precision * row.recall / pr;
}

void finalize(EvalReport& report) {
  for (auto& [tag, row] : report.per_tag) {
    fill_rates(row);
    report.micro.tp += row.tp;
    report.micro.fp += row.fp;
    report.micro.fn += row.fn;
    report.micro.support += row.support;
  }
  fill_rates(report.micro);
  double total_support = 0.0;
  for (const auto& [tag, row] : report.per_tag)
    total_support += static_cast<double>(row.support);
  report.weighted.support = report.micro.support;
  if (total_support > 0.0) {
    for (const auto& [tag, row] : report.per_tag) {
      double w = static_cast<double>(row.support) / total_support;
      report.weighted.precision += w * row.precision;
      report.weighted.recall += w * row.recall;
      report.weighted.f1 += w * row.f1;
    }
  }
}

}  // namespace

EvalReport score_ner(const std::vector<TaggedSequence>& gold,
                     const std::vector<TaggedSequence>& pred, Averaging avg) {
  check_alignment(gold, pred);
  EvalReport report;
  report.avg_mode = avg;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    std::vector<Chunk> gold_chunks = extract_chunks(gold[i]);
    std::vector<Chunk> pred_chunks = extract_chunks(pred[i]);
    std::set<Chunk> gold_set(gold_chunks.begin(), gold_chunks.end());
    std::set<Chunk> matched;
    for (const auto& chunk : pred_chunks) {
      if (gold_set.count(chunk) > 0) {
        report.per_tag[chunk.type].tp++;
        matched.insert(chunk);
      } else {
        report.per_tag[chunk.type].fp++;
      }
    }
    for (const auto& chunk : gold_chunks) {
      report.per_tag[chunk.type].support++;
      if (matched.count(chunk) == 0) report.per_tag[chunk.type].fn++;
    }
  }
  finalize(report);
  return report;
}

EvalReport score_pos(const std::vector<TaggedSequence>& gold,
                     const std::vector<TaggedSequence>& pred, Averaging avg) {
  check_alignment(gold, pred);
  EvalReport report;
  report.avg_mode = avg;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (std::size_t j = 0; j < gold[i].tokens.size(); ++j) {
      const std::string& g = gold[i].tokens[j].tag;
      const std::string& p = pred[i].tokens[j].tag;
      report.per_tag[g].support++;
      if (g == p) {
        report.per_tag[g].tp++;
      } else {
        report.per_tag[g].fn++;
        report.per_tag[p].fp++;
      }
    }
  }
  finalize(report);
  return report;
}

std::string format_f1(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

namespace {

std::string fixed4(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return std::string(buf);
}

}  // namespace

namespace {

std::string pad(std::string_view text, std::size_t width) {
  std::string out(text);
  while (out.size() < width) out.push_back(' ');
  return out;
}

}  // namespace

std::string format_report(const EvalReport& report) {
  std::size_t tag_width = 3;  // "AVG"
  for (const auto& [tag, row] : report.per_tag)
    tag_width = std::max(tag_width, tag.size());
  std::ostringstream out;
  auto line = [&](std::string_view tag, const ScoreRow& row) {
    out << pad(tag, tag_width + 2) << pad(fixed4(row.precision), 11)
        << pad(fixed4(row.recall), 8) << pad(fixed4(row.f1), 8)
        << row.support << '\n';
  };
  out << pad("tag", tag_width + 2) << pad("precision", 11) << pad("recall", 8)
      << pad("FB1", 8) << "support\n";
  for (const auto& [tag, row] : report.per_tag) line(tag, row);
  const ScoreRow& avg = report.avg_mode == Averaging::micro ? report.micro
                                                            : report.weighted;
  line("AVG", avg);
  return std::move(out).str();
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json j;
  auto row_json = [](const ScoreRow& row) {
    return nlohmann::json{{"tp", row.tp},
                          {"fp", row.fp},
                          {"fn", row.fn},
                          {"support", row.support},
                          {"precision", row.precision},
                          {"recall", row.recall},
                          {"f1", row.f1}};
  };
  for (const auto& [tag, row] : report.per_tag) j["per_tag"][tag] = row_json(row);
  j["micro"] = row_json(report.micro);
  j["weighted"] = row_json(report.weighted);
  j["avg_mode"] =
      report.avg_mode == Averaging::micro ? "micro" : "weighted";
  return j.dump(2) + "\n";
}

std::string checkpoint_curve(
    const std::vector<std::pair<std::uint64_t, double>>& f1_by_step) {
  for (std::size_t i = 1; i < f1_by_step.size(); ++i)
    if (f1_by_step[i].first <= f1_by_step[i - 1].first)
      throw stage_error("checkpoint steps must be strictly increasing");
  auto step_label = [](std::uint64_t step) {
    if (step > 0 && step % 1000000 == 0)
      return std::to_string(step / 1000000) + "M";
    if (step > 0 && step % 1000 == 0) return std::to_string(step / 1000) + "k";
    return std::to_string(step);
  };
  std::string head = "steps";
  std::string body = "FB1  ";
  for (const auto& [step, f1] : f1_by_step) {
    std::string label = step_label(step);
    std::string value = format_f1(f1);
    std::size_t width = std::max(label.size(), value.size());
    head += "  " + pad(label, width);
    body += "  " + pad(value, width);
  }
  while (!head.empty() && head.back() == ' ') head.pop_back();
  while (!body.empty() && body.back() == ' ') body.pop_back();
  return head + "\n" + body + "\n";
}

std::string checkpoint_curve(
    const std::vector<std::pair<std::uint64_t, EvalReport>>& reports) {
  std::vector<std::pair<std::uint64_t, double>> values;
  values.reserve(reports.size());
  for (const auto& [step, report] : reports)
    values.emplace_back(step, report.avg_mode == Averaging::micro
                                  ? report.micro.f1
                                  : report.weighted.f1);
  return checkpoint_curve(values);
}

}  // namespace svprep::evalkit

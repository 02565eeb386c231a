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

#include "svprep/pretrain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "svprep/parallel.hpp"
#include "svprep/rng.hpp"
#include "svprep/util.hpp"

namespace svprep::pretrain {

void MaskingConfig::validate() const {
  if (max_seq_len < 5)
    throw config_error("max_seq_len must be at least 5 to hold two segments");
  if (mask_fraction <= 0.0 || mask_fraction >= 1.0)
    throw config_error("mask_fraction must lie in (0, 1)");
  double sum = mask_token_prob + random_token_prob + keep_token_prob;
  if (mask_token_prob < 0.0 || random_token_prob < 0.0 ||
      keep_token_prob < 0.0 || std::abs(sum - 1.0) > 1e-9)
    throw config_error(
        "mask_token_prob + random_token_prob + keep_token_prob must equal 1");
  if (dupe_factor < 1) throw config_error("dupe_factor must be at least 1");
  if (short_seq_prob < 0.0 || short_seq_prob >= 1.0)
    throw config_error("short_seq_prob must lie in [0, 1)");
}

namespace {

// Floor with a tiny epsilon so products like 20 * 0.15 land on the integer.
int floor_frac(double value) { return static_cast<int>(value + 1e-9); }

}  // namespace

int max_predictions(const MaskingConfig& config) {
  return floor_frac(config.max_seq_len * config.mask_fraction);
}

int num_to_mask(int actual_len, const MaskingConfig& config) {
  int by_length =
      std::max(1, floor_frac(actual_len * config.mask_fraction));
  return std::min(max_predictions(config), by_length);
}

std::string validate_instance(const PretrainInstance& inst,
                              const MaskingConfig& config) {
  const auto& ids = inst.token_ids;
  std::size_t n = ids.size();
  if (n < 5) return "fewer than 5 tokens";
  if (n > static_cast<std::size_t>(config.max_seq_len))
    return "longer than max_seq_len";
  if (inst.segment_ids.size() != n) return "segment_ids length mismatch";
  if (ids[0] != vocab::kClsId) return "does not start with [CLS]";
  if (ids[n - 1] != vocab::kSepId) return "does not end with [SEP]";
  std::size_t transition = n;
  for (std::size_t i = 0; i < n; ++i) {
    int seg = inst.segment_ids[i];
    if (seg != 0 && seg != 1) return "segment id outside {0, 1}";
    if (seg == 1 && transition == n) transition = i;
    if (seg == 0 && transition != n) return "segment ids not 0* then 1*";
  }
  if (transition == n) return "no segment-B tokens";
  if (transition < 3) return "segment A shorter than [CLS] tok [SEP]";
  if (ids[transition - 1] != vocab::kSepId)
    return "segment A does not end with [SEP]";
  if (transition > n - 2) return "segment B empty";
  if (inst.masked_positions.size() != inst.masked_label_ids.size())
    return "masked position/label count mismatch";
  if (inst.masked_positions.size() >
      static_cast<std::size_t>(max_predictions(config)))
    return "more masked positions than the per-sequence cap";
  int prev = -1;
  for (std::size_t i = 0; i < inst.masked_positions.size(); ++i) {
    int pos = inst.masked_positions[i];
    if (pos <= prev) return "masked_positions not strictly increasing";
    prev = pos;
    if (pos < 0 || static_cast<std::size_t>(pos) >= n)
      return "masked position out of range";
    std::size_t p = static_cast<std::size_t>(pos);
    if (p == 0 || p == transition - 1 || p == n - 1)
      return "masked position points at [CLS] or [SEP]";
    if (inst.masked_label_ids[i] < 0) return "negative masked label id";
  }
  return "";
}

PretrainReport& PretrainReport::operator+=(const PretrainReport& other) {
  documents += other.documents;
  instances += other.instances;
  skipped_paragraphs += other.skipped_paragraphs;
  masked_mask += other.masked_mask;
  masked_random += other.masked_random;
  masked_keep += other.masked_keep;
  if (position_histogram.size() < other.position_histogram.size())
    position_histogram.resize(other.position_histogram.size(), 0);
  for (std::size_t i = 0; i < other.position_histogram.size(); ++i)
    position_histogram[i] += other.position_histogram[i];
  return *this;
}

namespace {

using Document = std::vector<std::vector<int>>;

void truncate_pair(std::vector<int>& a, std::vector<int>& b, int max_total,
                   Rng& rng) {
  while (a.size() + b.size() > static_cast<std::size_t>(max_total)) {
    std::vector<int>& longer = a.size() > b.size() ? a : b;
    // Trimming front or back at random avoids a positional bias.
    if (rng.uniform() < 0.5) {
      longer.erase(longer.begin());
    } else {
      longer.pop_back();
    }
  }
}

void mask_instance(PretrainInstance& inst, const vocab::SubwordVocab& vocab,
                   const MaskingConfig& config, Rng& rng,
                   PretrainReport& report) {
  std::vector<int> cand;
  cand.reserve(inst.token_ids.size());
  for (std::size_t i = 0; i < inst.token_ids.size(); ++i) {
    int id = inst.token_ids[i];
    if (id == vocab::kClsId || id == vocab::kSepId) continue;
    cand.push_back(static_cast<int>(i));
  }
  rng.shuffle(cand);
  std::size_t n = static_cast<std::size_t>(
      num_to_mask(static_cast<int>(inst.token_ids.size()), config));
  n = std::min(n, cand.size());
  cand.resize(n);
  std::sort(cand.begin(), cand.end());

  std::size_t n_random_pool = vocab.size() - vocab::kNumControlTokens;
  for (int pos : cand) {
    std::size_t p = static_cast<std::size_t>(pos);
    int original = inst.token_ids[p];
    inst.masked_positions.push_back(pos);
    inst.masked_label_ids.push_back(original);
    double u = rng.uniform();
    if (u < config.mask_token_prob) {
      inst.token_ids[p] = vocab::kMaskId;
      report.masked_mask++;
    } else if (u < config.mask_token_prob + config.random_token_prob) {
      // Replacement draws skip the control ids.
      inst.token_ids[p] =
          vocab::kNumControlTokens + static_cast<int>(rng.below(n_random_pool));
      report.masked_random++;
    } else {
      report.masked_keep++;
    }
    if (report.position_histogram.size() <= p)
      report.position_histogram.resize(
          static_cast<std::size_t>(config.max_seq_len), 0);
    report.position_histogram[p]++;
  }
}

std::vector<PretrainInstance> instances_from_document(
    const std::vector<Document>& docs, std::size_t doc_idx,
    const vocab::SubwordVocab& vocab, const MaskingConfig& config, Rng rng,
    PretrainReport& report) {
  std::vector<PretrainInstance> out;
  const Document& document = docs[doc_idx];
  const int max_num_tokens = config.max_seq_len - 3;

  int target_seq_length = max_num_tokens;
  if (rng.uniform() < config.short_seq_prob)
    target_seq_length =
        2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                std::max(1, max_num_tokens - 1))));

  std::vector<const std::vector<int>*> chunk;
  std::size_t chunk_len = 0;
  for (std::size_t i = 0; i < document.size(); ++i) {
    chunk.push_back(&document[i]);
    chunk_len += document[i].size();
    if (i + 1 != document.size() &&
        chunk_len < static_cast<std::size_t>(target_seq_length)) {
      continue;
    }
    // Chunks holding one sentence are dropped rather than paired with a
    // random segment; every emitted label is then a fair coin.
    if (chunk.size() >= 2) {
      std::size_t a_end = 1 + rng.below(chunk.size() - 1);
      std::vector<int> tokens_a;
      for (std::size_t j = 0; j < a_end; ++j)
        tokens_a.insert(tokens_a.end(), chunk[j]->begin(), chunk[j]->end());

      bool want_random = rng.uniform() < 0.5;
      bool is_random = want_random && docs.size() >= 2;
      std::vector<int> tokens_b;
      if (is_random) {
        int target_b =
            target_seq_length - static_cast<int>(tokens_a.size());
        std::uint64_t r = rng.below(docs.size() - 1);
        std::size_t other =
            r >= doc_idx ? static_cast<std::size_t>(r) + 1
                         : static_cast<std::size_t>(r);
        const Document& rd = docs[other];
        std::size_t start = rng.below(rd.size());
        for (std::size_t j = start; j < rd.size(); ++j) {
          tokens_b.insert(tokens_b.end(), rd[j].begin(), rd[j].end());
          if (static_cast<int>(tokens_b.size()) >= target_b) break;
        }
        // Segments displaced by the random B go back on the stream.
        i -= chunk.size() - a_end;
      } else {
        for (std::size_t j = a_end; j < chunk.size(); ++j)
          tokens_b.insert(tokens_b.end(), chunk[j]->begin(), chunk[j]->end());
      }
      truncate_pair(tokens_a, tokens_b, max_num_tokens, rng);

      PretrainInstance inst;
      inst.is_random_next = is_random;
      inst.token_ids.reserve(tokens_a.size() + tokens_b.size() + 3);
      inst.token_ids.push_back(vocab::kClsId);
      inst.token_ids.insert(inst.token_ids.end(), tokens_a.begin(),
                            tokens_a.end());
      inst.token_ids.push_back(vocab::kSepId);
      std::size_t a_len = inst.token_ids.size();
      inst.token_ids.insert(inst.token_ids.end(), tokens_b.begin(),
                            tokens_b.end());
      inst.token_ids.push_back(vocab::kSepId);
      inst.segment_ids.assign(inst.token_ids.size(), 1);
      std::fill(inst.segment_ids.begin(),
                inst.segment_ids.begin() + static_cast<std::ptrdiff_t>(a_len),
                0);
      mask_instance(inst, vocab, config, rng, report);
      out.push_back(std::move(inst));
    }
    chunk.clear();
    chunk_len = 0;
  }
  return out;
}

}  // namespace

std::vector<PretrainInstance> create_instances(
    const std::vector<std::vector<std::string>>& documents,
    const vocab::SubwordVocab& vocab, const MaskingConfig& config,
    PretrainReport* report, int workers) {
  config.validate();
  const int max_num_tokens = config.max_seq_len - 3;
  PretrainReport total;
  total.position_histogram.assign(
      static_cast<std::size_t>(config.max_seq_len), 0);

  struct Encoded {
    Document segs;
    bool any_fit = false;
  };
  std::vector<Encoded> encoded = parallel_map(
      documents, workers, [&](const std::vector<std::string>& sentences) {
        Encoded e;
        for (const auto& sentence : sentences) {
          std::vector<int> ids = vocab.encode(sentence);
          if (ids.empty()) continue;
          if (static_cast<int>(ids.size()) <= max_num_tokens) e.any_fit = true;
          e.segs.push_back(std::move(ids));
        }
        return e;
      });

  std::vector<Document> docs;
  docs.reserve(encoded.size());
  for (auto& e : encoded) {
    if (e.segs.empty()) continue;
    if (!e.any_fit) {
      total.skipped_paragraphs++;
      continue;
    }
    docs.push_back(std::move(e.segs));
  }
  total.documents = docs.size();

  std::vector<PretrainInstance> instances;
  if (!docs.empty()) {
    std::size_t njobs =
        docs.size() * static_cast<std::size_t>(config.dupe_factor);
    std::vector<std::vector<PretrainInstance>> job_out(njobs);
    std::vector<PretrainReport> job_report(njobs);
    Rng root(config.seed);
    parallel_for(njobs, workers, [&](std::size_t j) {
      std::size_t pass = j / docs.size();
      std::size_t doc = j % docs.size();
      job_out[j] = instances_from_document(docs, doc, vocab, config,
                                           root.fork(doc, pass),
                                           job_report[j]);
    });
    for (std::size_t j = 0; j < njobs; ++j) {
      total += job_report[j];
      for (auto& inst : job_out[j]) instances.push_back(std::move(inst));
    }
  }
  total.instances = instances.size();
  if (report != nullptr) *report = std::move(total);
  return instances;
}

std::string serialize_instances(
    const std::vector<PretrainInstance>& instances) {
  std::string out;
  for (const auto& inst : instances) {
    nlohmann::json record;
    record["labels"] = inst.masked_label_ids;
    record["positions"] = inst.masked_positions;
    record["random_next"] = inst.is_random_next;
    record["segments"] = inst.segment_ids;
    record["tokens"] = inst.token_ids;
    out += record.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<PretrainInstance> load_instances(std::string_view content) {
  std::vector<PretrainInstance> instances;
  std::size_t lineno = 0;
  for (auto line : util::split(content, '\n')) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw stage_error("instance file line " + std::to_string(lineno) +
                        ": " + e.what());
    }
    try {
      PretrainInstance inst;
      record.at("tokens").get_to(inst.token_ids);
      record.at("segments").get_to(inst.segment_ids);
      record.at("positions").get_to(inst.masked_positions);
      record.at("labels").get_to(inst.masked_label_ids);
      inst.is_random_next = record.at("random_next").get<bool>();
      instances.push_back(std::move(inst));
    } catch (const nlohmann::json::exception& e) {
      throw stage_error("instance file line " + std::to_string(lineno) +
                        ": " + e.what());
    }
  }
  return instances;
}

void save_instances_file(const std::vector<PretrainInstance>& instances,
                         const std::filesystem::path& path) {
  util::write_file(path, serialize_instances(instances));
}

std::vector<PretrainInstance> load_instances_file(
    const std::filesystem::path& path) {
  return load_instances(util::read_file(path));
}

std::string format_report(const PretrainReport& report) {
  std::ostringstream out;
  std::uint64_t masked =
      report.masked_mask + report.masked_random + report.masked_keep;
  auto pct = [masked](std::uint64_t n) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f%%",
                  masked == 0 ? 0.0 : 100.0 * static_cast<double>(n) /
                                          static_cast<double>(masked));
    return std::string(buf);
  };
  out << "documents           " << report.documents << '\n'
      << "instances           " << report.instances << '\n'
      << "skipped paragraphs  " << report.skipped_paragraphs << '\n'
      << "masked positions    " << masked << '\n'
      << "  [MASK]            " << report.masked_mask << " ("
      << pct(report.masked_mask) << ")\n"
      << "  random            " << report.masked_random << " ("
      << pct(report.masked_random) << ")\n"
      << "  kept              " << report.masked_keep << " ("
      << pct(report.masked_keep) << ")\n";
  if (!report.position_histogram.empty() && masked > 0) {
    out << "masked-position histogram\n";
    std::size_t buckets = 16;
    std::size_t n = report.position_histogram.size();
    std::size_t width = (n + buckets - 1) / buckets;
    for (std::size_t b = 0; b * width < n; ++b) {
      std::size_t lo = b * width;
      std::size_t hi = std::min(n, lo + width) - 1;
      std::uint64_t sum = 0;
      for (std::size_t i = lo; i <= hi; ++i)
        sum += report.position_histogram[i];
      char head[32];
      std::snprintf(head, sizeof(head), "  [%3zu-%3zu] ", lo, hi);
      out << head << sum << '\n';
    }
  }
  return std::move(out).str();
}

}  // namespace svprep::pretrain

// Copyright 2026 The cmsg Authors
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

#include "cmsg/eval.hpp"

#include <sstream>

namespace cmsg {

namespace {

std::size_t whitespace_tokens(const std::string& s) {
  std::istringstream in(s);
  std::size_t n = 0;
  for (std::string w; in >> w;) ++n;
  return n;
}

}  // namespace

double compute_tl(const std::vector<RunRecord>& records) {
  double total = 0.0;
  std::size_t n = 0;
  for (const auto& r : records) {
    if (!r.ok || r.selected() == nullptr) continue;
    total += static_cast<double>(whitespace_tokens(r.selected()->full_text));
    ++n;
  }
  if (n == 0) throw InvalidInput("total length is undefined without successful records");
  return total / static_cast<double>(n);
}

double selected_relation(const RunRecord& r) {
  if (r.selected_relation) return *r.selected_relation;
  const auto& s = r.scores.at(*r.selected_index);
  if (!s.factor_mask.relation) {
    throw InvalidInput("record " + r.image_id + " carries no relation score for its selection");
  }
  return s.relation;
}

RelationMean compute_relation_mean(const std::vector<RunRecord>& records) {
  double total = 0.0;
  std::size_t n = 0;
  for (const auto& r : records) {
    if (!r.ok || !r.selected_index) continue;
    total += selected_relation(r);
    ++n;
  }
  if (n == 0) throw InvalidInput("relation mean is undefined without successful records");
  RelationMean m;
  m.raw = total / static_cast<double>(n);
  m.scaled = m.raw * 10.0;
  return m;
}

EvalReport evaluate(const std::vector<RunRecord>& records) {
  EvalReport report;
  report.n_images = records.size();
  for (const auto& r : records) {
    EvalRow row;
    row.image_id = r.image_id;
    row.ok = r.ok && r.selected_index.has_value();
    if (row.ok) {
      row.selected_text = r.selected()->full_text;
      row.tokens = whitespace_tokens(row.selected_text);
      row.relation = selected_relation(r);
      ++report.n_successful;
    } else {
      row.failure_reason = r.failure_reason;
    }
    report.rows.push_back(std::move(row));
  }
  if (report.n_successful > 0) {
    report.tl_mean = compute_tl(records);
    report.relation_mean = compute_relation_mean(records);
  }
  return report;
}

void to_json(json& j, const EvalReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"image_id", row.image_id},
                    {"ok", row.ok},
                    {"tokens", row.tokens},
                    {"relation", row.relation},
                    {"selected_text", row.selected_text},
                    {"failure_reason", row.failure_reason}});
  }
  j = json{{"n_images", r.n_images},
           {"n_successful", r.n_successful},
           {"tl_mean", r.tl_mean},
           {"relation_mean_raw", r.relation_mean.raw},
           {"relation_mean_x10", r.relation_mean.scaled},
           {"rows", rows}};
}

}  // namespace cmsg

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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cmsg/pipeline.hpp"

namespace cmsg {

/// Mean whitespace-token count of the selected texts over successful
/// records. Throws InvalidInput when there are none.
double compute_tl(const std::vector<RunRecord>& records);

/// Relation of the record's selection; prefers the separately measured value
/// over the ranking breakdown, which holds 1 when the factor was masked.
double selected_relation(const RunRecord& r);

struct RelationMean {
  double raw = 0.0;     // on the [0, clip_weight] scale
  double scaled = 0.0;  // raw x 10, the usual CLIPScore table convention
};

RelationMean compute_relation_mean(const std::vector<RunRecord>& records);

struct EvalRow {
  std::string image_id;
  bool ok = false;
  std::size_t tokens = 0;
  double relation = 0.0;
  std::string selected_text;
  std::string failure_reason;
};

struct EvalReport {
  std::size_t n_images = 0;
  std::size_t n_successful = 0;
  double tl_mean = 0.0;
  RelationMean relation_mean;
  std::vector<EvalRow> rows;
};

EvalReport evaluate(const std::vector<RunRecord>& records);

void to_json(json& j, const EvalReport& r);

}  // namespace cmsg

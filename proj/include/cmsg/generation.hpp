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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmsg/backends.hpp"
#include "cmsg/extraction.hpp"
#include "cmsg/valence.hpp"

namespace cmsg {

/// Content words of a caption: non-empty, duplicate-free, no stopwords.
struct KeywordSet {
  std::vector<std::string> words;
};

struct Consequence {
  std::string phrase;
  std::string source_relation = "causes";
  double score = 0.0;

  bool operator==(const Consequence&) const = default;
};

inline constexpr std::size_t kMaxConsequenceTokens = 8;

/// The four generator identities used when a config names none.
const std::vector<std::string>& default_generator_models();

struct PlanConfig {
  std::size_t n_cons = 2;
  std::size_t t1 = 3;  // single-tag sets drawn from the top t1 tags
  std::size_t t2 = 3;  // tag pairs drawn from the top t2 tags
  std::size_t k_max = 40;
  std::vector<std::string> model_ids = default_generator_models();
  bool use_consequence = true;
  bool use_tags = true;

  void validate() const;
};

struct PlanItem {
  std::vector<std::string> keywords;
  std::string model_id;
  std::optional<std::string> consequence;
  std::vector<std::string> tags_used;

  bool operator==(const PlanItem&) const = default;
};

struct GenerationPlan {
  std::vector<PlanItem> items;

  bool operator==(const GenerationPlan&) const = default;
};

struct Provenance {
  std::string model_id;
  std::vector<std::string> keywords;
  bool consequence_used = false;
  std::vector<std::string> tags_used;
};

struct CandidateText {
  int candidate_id = 0;
  std::string first_sentence;
  std::string rest_text;
  std::string full_text;
  Provenance provenance;
};

struct GenerationOutcome {
  std::vector<CandidateText> candidates;
  std::size_t backend_failures = 0;
  std::size_t dropped_for_keywords = 0;
  std::vector<std::string> warnings;
};

/// Open-class caption tokens, stopwords removed, first occurrence order.
/// Throws DegenerateInput when nothing survives.
KeywordSet extract_keywords(const SdCaption& caption, const RuleTagger& tagger);

/// Top `n_cons` cause-relation consequences by backend score. Phrases longer
/// than kMaxConsequenceTokens are discarded. Throws ConsequenceUnavailable
/// when none remain.
std::vector<Consequence> infer_consequence(const KeywordSet& keywords,
                                           const BackendClient& backend,
                                           std::size_t n_cons = 2);

/// Keyword-set ladder per consequence: {c}, {c, tag} for the top t1 tags,
/// {c, tag_i, tag_j} for pairs of the top t2 tags. Without consequences the
/// same ladder is built from tags alone. Sets are crossed with the model
/// roster (set-major) and truncated to k_max.
GenerationPlan build_plan(const TagSet& tags, const std::vector<Consequence>& consequences,
                          const PlanConfig& config);

/// One backend call per plan item; `parallelism` > 1 dispatches items
/// concurrently. Results keep plan order. Texts missing a planned keyword are
/// dropped. Throws GenerationFailed when no candidate survives.
GenerationOutcome generate_candidates(const GenerationPlan& plan,
                                      std::string_view first_sentence,
                                      const BackendClient& backend,
                                      std::size_t parallelism = 1);

}  // namespace cmsg

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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "cmsg/backends.hpp"
#include "cmsg/errors.hpp"
#include "cmsg/generation.hpp"

namespace cmsg {

inline constexpr double kDefaultClipWeight = 2.5;
inline constexpr double kUnitNormTolerance = 1e-6;

/// Which ranking factors contribute to the composite. An inactive factor is
/// stored as 1 and contributes 1 to the product.
struct FactorMask {
  bool relation = true;
  bool sarcasticness = true;
  bool grammaticality = true;

  bool operator==(const FactorMask&) const = default;
};

struct RankerConfig {
  std::string style_token = "sarcasm";
  bool rank_sarcasticness = true;         // false: woS
  bool rank_grammar_and_relation = true;  // false: woGI
  double clip_weight = kDefaultClipWeight;

  FactorMask mask() const {
    return {rank_grammar_and_relation, rank_sarcasticness, rank_grammar_and_relation};
  }
  void validate() const {
    if (!(clip_weight > 0.0) || !std::isfinite(clip_weight)) {
      throw InvalidInput("clip_weight must be a positive finite number");
    }
  }
};

/// Raw factor values for one candidate.
struct FactorScores {
  double relation = 1.0;
  double sarcasticness = 1.0;
  double grammaticality = 1.0;
};

struct ScoreBreakdown {
  double relation = 1.0;        // [0, clip_weight]
  double sarcasticness = 1.0;   // [0, 1]
  double grammaticality = 1.0;  // (0, 1]
  double composite = 1.0;
  FactorMask factor_mask;
};

/// Image-text relation: clip_weight * max(cos(image, text), 0).
///
/// Both vectors must share a dimension of at least 2 and have unit norm
/// within kUnitNormTolerance.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar relation_score(const Eigen::MatrixBase<DerivedA>& image_embedding,
                                         const Eigen::MatrixBase<DerivedB>& text_embedding,
                                         typename DerivedA::Scalar clip_weight = kDefaultClipWeight) {
  using Scalar = typename DerivedA::Scalar;
  static_assert(std::is_same_v<Scalar, typename DerivedB::Scalar>,
                "embeddings must share a scalar type");
  if (image_embedding.size() != text_embedding.size()) {
    throw InvalidInput("embedding dimensions differ");
  }
  if (image_embedding.size() < 2) throw InvalidInput("embedding dimension must be >= 2");
  if (!(clip_weight > Scalar(0))) throw InvalidInput("clip_weight must be positive");
  const Scalar na = image_embedding.norm();
  const Scalar nb = text_embedding.norm();
  if (std::abs(na - Scalar(1)) > Scalar(kUnitNormTolerance) ||
      std::abs(nb - Scalar(1)) > Scalar(kUnitNormTolerance)) {
    throw InvalidInput("embeddings must have unit norm");
  }
  const Scalar cosine = image_embedding.dot(text_embedding) / (na * nb);
  return clip_weight * std::clamp(cosine, Scalar(0), Scalar(1));
}

/// Product of the active factors, elementwise over candidates.
template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> composite_scores(
    const Eigen::ArrayBase<Derived>& relation, const Eigen::ArrayBase<Derived>& sarcasticness,
    const Eigen::ArrayBase<Derived>& grammaticality, const FactorMask& mask) {
  using Array = Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1>;
  Array out = Array::Ones(relation.size());
  if (mask.relation) out *= relation;
  if (mask.sarcasticness) out *= sarcasticness;
  if (mask.grammaticality) out *= grammaticality;
  return out;
}

/// Contradiction probability with premise = first sentence and hypothesis =
/// rest text.
double sarcasticness_score(std::string_view first_sentence, std::string_view rest_text,
                           const BackendClient& backend);

/// exp(-mean_nll), i.e. 1 / perplexity. Throws InvalidInput when mean_nll is
/// negative or not finite.
double grammaticality_from_nll(double mean_nll);

double grammaticality_score(std::string_view text, const BackendClient& backend);

/// Validates factor ranges, replaces inactive factors by 1, and multiplies.
ScoreBreakdown composite_score(const FactorScores& factors, const RankerConfig& config);

struct Ranking {
  std::vector<std::size_t> order;  // indices into the candidate list, best first
  std::size_t selected = 0;
};

/// Descending composite; ties go to higher sarcasticness, then lower
/// candidate_id.
Ranking rank_candidates(const std::vector<CandidateText>& candidates,
                        const std::vector<ScoreBreakdown>& scores);

}  // namespace cmsg

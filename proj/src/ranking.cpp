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

#include "cmsg/ranking.hpp"

#include <limits>
#include <numeric>

#include "cmsg/text.hpp"

namespace cmsg {

double sarcasticness_score(std::string_view first_sentence, std::string_view rest_text,
                           const BackendClient& backend) {
  if (text::trim(first_sentence).empty() || text::trim(rest_text).empty()) {
    throw InvalidInput("sarcasticness needs two non-empty texts");
  }
  return backend.nli(first_sentence, rest_text).contradict;
}

double grammaticality_from_nll(double mean_nll) {
  if (!(mean_nll >= 0.0) || !std::isfinite(mean_nll)) {
    throw InvalidInput("mean_nll must be finite and non-negative");
  }
  return std::exp(-mean_nll);
}

double grammaticality_score(std::string_view text, const BackendClient& backend) {
  if (text::trim(text).empty()) throw InvalidInput("cannot score empty text");
  const auto r = backend.ppl(text);
  if (r.mean_nll < 0.0) throw ProtocolError("negative mean_nll");
  // exp underflows to 0 for huge NLL; keep the score inside (0, 1].
  return std::max(grammaticality_from_nll(r.mean_nll), std::numeric_limits<double>::min());
}

ScoreBreakdown composite_score(const FactorScores& f, const RankerConfig& config) {
  config.validate();
  if (!(f.relation >= 0.0 && f.relation <= config.clip_weight)) {
    throw InvalidInput("relation score outside [0, clip_weight]");
  }
  if (!(f.sarcasticness >= 0.0 && f.sarcasticness <= 1.0)) {
    throw InvalidInput("sarcasticness outside [0, 1]");
  }
  if (!(f.grammaticality > 0.0 && f.grammaticality <= 1.0)) {
    throw InvalidInput("grammaticality outside (0, 1]");
  }
  ScoreBreakdown out;
  out.factor_mask = config.mask();
  out.relation = out.factor_mask.relation ? f.relation : 1.0;
  out.sarcasticness = out.factor_mask.sarcasticness ? f.sarcasticness : 1.0;
  out.grammaticality = out.factor_mask.grammaticality ? f.grammaticality : 1.0;
  out.composite = out.relation * out.sarcasticness * out.grammaticality;
  return out;
}

Ranking rank_candidates(const std::vector<CandidateText>& candidates,
                        const std::vector<ScoreBreakdown>& scores) {
  if (candidates.empty()) throw InvalidInput("no candidates to rank");
  if (candidates.size() != scores.size()) {
    throw InvalidInput("candidate and score lists differ in length");
  }
  Ranking r;
  r.order.resize(candidates.size());
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::sort(r.order.begin(), r.order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a].composite != scores[b].composite) return scores[a].composite > scores[b].composite;
    if (scores[a].sarcasticness != scores[b].sarcasticness) {
      return scores[a].sarcasticness > scores[b].sarcasticness;
    }
    return candidates[a].candidate_id < candidates[b].candidate_id;
  });
  r.selected = r.order.front();
  return r;
}

}  // namespace cmsg

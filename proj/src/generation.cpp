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

#include "cmsg/generation.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "cmsg/text.hpp"

namespace cmsg {

const std::vector<std::string>& default_generator_models() {
  static const std::vector<std::string> models = {
      "base-one-billion-word", "base-yelp", "large-one-billion-word", "large-yelp"};
  return models;
}

void PlanConfig::validate() const {
  if (k_max == 0) throw InvalidInput("k_max must be >= 1");
  if (n_cons == 0) throw InvalidInput("n_cons must be >= 1");
  if (model_ids.empty()) throw InvalidInput("at least one generator model id is required");
  for (const auto& m : model_ids) {
    if (m.empty()) throw InvalidInput("empty generator model id");
  }
  if (!use_consequence && !use_tags) {
    throw InvalidInput("at least one of use_consequence and use_tags must be set");
  }
}

KeywordSet extract_keywords(const SdCaption& caption, const RuleTagger& tagger) {
  KeywordSet out;
  std::set<std::string> seen;
  for (const auto& tok : tagger.tag(caption.text)) {
    if (tok.pos_tag == PosTag::other || tagger.is_stopword(tok.lower)) continue;
    if (seen.insert(tok.lower).second) out.words.push_back(tok.lower);
  }
  if (out.words.empty()) {
    throw DegenerateInput("caption has no content words: '" + caption.text + "'");
  }
  return out;
}

std::vector<Consequence> infer_consequence(const KeywordSet& keywords,
                                           const BackendClient& backend,
                                           std::size_t n_cons) {
  if (keywords.words.empty()) throw InvalidInput("consequence inference needs keywords");
  auto raw = backend.consequences(keywords.words, "causes");
  std::stable_sort(raw.begin(), raw.end(), [](const WireConsequence& a, const WireConsequence& b) {
    return a.score > b.score;
  });
  std::vector<Consequence> out;
  std::set<std::string> seen;
  for (const auto& c : raw) {
    if (out.size() >= n_cons) break;
    const auto tokens = text::tokenize(c.phrase);
    if (tokens.empty() || tokens.size() > kMaxConsequenceTokens) continue;
    auto phrase = text::join(tokens);
    if (!seen.insert(phrase).second) continue;
    out.push_back({std::move(phrase), "causes", c.score});
  }
  if (out.empty()) throw ConsequenceUnavailable("no consequence inferred");
  return out;
}

GenerationPlan build_plan(const TagSet& tags, const std::vector<Consequence>& consequences,
                          const PlanConfig& config) {
  config.validate();
  std::vector<std::string> tag_labels;
  if (config.use_tags) {
    for (const auto& t : tags.tags) tag_labels.push_back(t.label);
  }
  std::vector<std::string> cons;
  if (config.use_consequence) {
    for (const auto& c : consequences) cons.push_back(c.phrase);
  }
  if (tag_labels.empty() && cons.empty()) {
    throw DegenerateInput("no tags and no consequences to build a plan from");
  }

  struct KeywordPlan {
    std::optional<std::string> consequence;
    std::vector<std::string> tags;
  };
  const std::size_t singles = std::min(config.t1, tag_labels.size());
  const std::size_t pair_pool = std::min(config.t2, tag_labels.size());

  std::vector<KeywordPlan> sets;
  const auto ladder = [&](const std::optional<std::string>& c) {
    if (c) sets.push_back({c, {}});
    for (std::size_t i = 0; i < singles; ++i) {
      if (c && *c == tag_labels[i]) continue;
      sets.push_back({c, {tag_labels[i]}});
    }
    for (std::size_t i = 0; i < pair_pool; ++i) {
      for (std::size_t j = i + 1; j < pair_pool; ++j) {
        if (c && (*c == tag_labels[i] || *c == tag_labels[j])) continue;
        sets.push_back({c, {tag_labels[i], tag_labels[j]}});
      }
    }
  };
  if (cons.empty()) {
    ladder(std::nullopt);
  } else {
    for (const auto& c : cons) ladder(c);
  }

  GenerationPlan plan;
  for (const auto& s : sets) {
    std::vector<std::string> keywords;
    if (s.consequence) keywords.push_back(*s.consequence);
    keywords.insert(keywords.end(), s.tags.begin(), s.tags.end());
    for (const auto& model : config.model_ids) {
      if (plan.items.size() >= config.k_max) return plan;
      plan.items.push_back({keywords, model, s.consequence, s.tags});
    }
  }
  return plan;
}

GenerationOutcome generate_candidates(const GenerationPlan& plan,
                                      std::string_view first_sentence,
                                      const BackendClient& backend,
                                      std::size_t parallelism) {
  if (plan.items.empty()) throw InvalidInput("generation plan is empty");

  struct Slot {
    std::optional<std::string> text;
    std::string error;
  };
  std::vector<Slot> slots(plan.items.size());
  const auto run_item = [&](std::size_t i) {
    try {
      slots[i].text = backend.generate(plan.items[i].keywords, plan.items[i].model_id);
    } catch (const Error& e) {
      slots[i].error = e.what();
    }
  };

  const std::size_t workers = std::min(std::max<std::size_t>(parallelism, 1), plan.items.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < plan.items.size(); ++i) run_item(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < plan.items.size(); i = next++) run_item(i);
      });
    }
  }

  GenerationOutcome out;
  const std::string first(first_sentence);
  for (std::size_t i = 0; i < plan.items.size(); ++i) {
    const auto& item = plan.items[i];
    if (!slots[i].text) {
      ++out.backend_failures;
      out.warnings.push_back("plan item " + std::to_string(i) + " failed: " + slots[i].error);
      continue;
    }
    const auto tokens = text::tokenize(*slots[i].text);
    const auto missing = std::find_if(item.keywords.begin(), item.keywords.end(),
                                      [&](const std::string& k) {
                                        return !text::contains_phrase(tokens, text::tokenize(k));
                                      });
    if (tokens.empty() || missing != item.keywords.end()) {
      ++out.dropped_for_keywords;
      out.warnings.push_back("plan item " + std::to_string(i) + " dropped: text omits keyword '" +
                             (missing != item.keywords.end() ? *missing : std::string()) + "'");
      continue;
    }
    CandidateText c;
    c.candidate_id = static_cast<int>(out.candidates.size());
    c.first_sentence = first;
    c.rest_text = text::join(tokens);
    c.full_text = first + " " + c.rest_text;
    c.provenance = {item.model_id, item.keywords, item.consequence.has_value(), item.tags_used};
    out.candidates.push_back(std::move(c));
  }
  if (out.candidates.empty()) {
    throw GenerationFailed("all " + std::to_string(plan.items.size()) +
                           " generation requests failed or missed their keywords");
  }
  return out;
}

}  // namespace cmsg

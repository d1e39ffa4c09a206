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

#include "cmsg/extraction.hpp"

#include <algorithm>
#include <filesystem>
#include <map>

#include "cmsg/text.hpp"

namespace cmsg {

std::string_view sentiment_name(Sentiment s) {
  switch (s) {
    case Sentiment::positive: return "positive";
    case Sentiment::negative: return "negative";
    case Sentiment::neutral: return "neutral";
    case Sentiment::unknown: return "unknown";
  }
  return "unknown";
}

Sentiment parse_sentiment(std::string_view name) {
  if (name == "positive") return Sentiment::positive;
  if (name == "negative") return Sentiment::negative;
  if (name == "neutral") return Sentiment::neutral;
  if (name == "unknown") return Sentiment::unknown;
  throw InvalidInput("unknown sentiment '" + std::string(name) + "'");
}

ImageRecord resolve_image(const std::string& ref) {
  if (text::trim(ref).empty()) throw InvalidInput("empty image reference");
  ImageRecord rec;
  rec.source = ref;
  std::error_code ec;
  const std::filesystem::path path(ref);
  if (std::filesystem::is_regular_file(path, ec)) {
    rec.image_id = path.stem().string();
    rec.bytes = text::read_file(path);
  } else {
    rec.image_id = std::string(text::trim(ref));
  }
  return rec;
}

TagSet normalize_tags(const std::vector<WireTag>& raw) {
  std::map<std::string, double> best;
  for (const auto& t : raw) {
    if (!(t.confidence >= 0.0 && t.confidence <= 1.0)) {
      throw ProtocolError("tag '" + t.label + "' has confidence outside [0,1]");
    }
    auto label = text::normalize(t.label);
    if (label.empty()) throw ProtocolError("empty tag label");
    auto [it, inserted] = best.emplace(std::move(label), t.confidence);
    if (!inserted) it->second = std::max(it->second, t.confidence);
  }
  TagSet out;
  for (const auto& [label, conf] : best) out.tags.push_back({label, conf});
  std::sort(out.tags.begin(), out.tags.end(), [](const Tag& a, const Tag& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    return a.label < b.label;
  });
  return out;
}

SdCaption normalize_caption(const WireCaption& raw) {
  if (!text::is_single_sentence(raw.caption)) {
    throw ProtocolError("caption is not a single sentence: '" + raw.caption + "'");
  }
  SdCaption out;
  out.text = text::normalize(raw.caption);
  if (out.text.empty()) throw ProtocolError("empty caption");
  try {
    out.sentiment_hint = parse_sentiment(raw.sentiment);
  } catch (const InvalidInput& e) {
    throw ProtocolError(e.what());
  }
  return out;
}

namespace {

template <typename Fn>
auto with_image_context(const ImageRecord& image, Fn&& fn) {
  try {
    return fn();
  } catch (const ProtocolError& e) {
    throw ProtocolError("image '" + image.image_id + "': " + e.what());
  } catch (const BackendError& e) {
    throw BackendError("image '" + image.image_id + "': " + e.what(), e.attempts());
  }
}

}  // namespace

TagSet fetch_tags(const ImageRecord& image, const BackendClient& backend) {
  return with_image_context(image, [&] { return normalize_tags(backend.tags(image)); });
}

SdCaption fetch_caption(const ImageRecord& image, const BackendClient& backend,
                        Sentiment desired) {
  return with_image_context(image, [&] {
    return normalize_caption(backend.caption(image, sentiment_name(desired)));
  });
}

}  // namespace cmsg

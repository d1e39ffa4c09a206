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

#include <string>
#include <string_view>
#include <vector>

#include "cmsg/backends.hpp"
#include "cmsg/image.hpp"

namespace cmsg {

enum class Sentiment { positive, negative, neutral, unknown };

std::string_view sentiment_name(Sentiment s);
/// Throws InvalidInput on an unknown label.
Sentiment parse_sentiment(std::string_view name);

struct Tag {
  std::string label;
  double confidence = 0.0;

  bool operator==(const Tag&) const = default;
};

/// Lowercased, deduplicated (max confidence wins), sorted by descending
/// confidence with ties broken by label.
struct TagSet {
  std::vector<Tag> tags;

  bool empty() const { return tags.empty(); }
  std::size_t size() const { return tags.size(); }
  bool operator==(const TagSet&) const = default;
};

struct SdCaption {
  std::string text;
  Sentiment sentiment_hint = Sentiment::unknown;
};

/// Normalizes raw tagger output. Throws ProtocolError on an empty label or a
/// confidence outside [0,1].
TagSet normalize_tags(const std::vector<WireTag>& raw);

/// Throws ProtocolError on an empty or multi-sentence caption.
SdCaption normalize_caption(const WireCaption& raw);

/// Backend failures are rethrown with the image id attached.
TagSet fetch_tags(const ImageRecord& image, const BackendClient& backend);
SdCaption fetch_caption(const ImageRecord& image, const BackendClient& backend,
                        Sentiment desired = Sentiment::negative);

}  // namespace cmsg

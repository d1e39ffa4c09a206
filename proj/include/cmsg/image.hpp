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

#include <optional>
#include <string>

namespace cmsg {

/// An input image. The engine never decodes pixels; `bytes` is forwarded to
/// the tagger, captioner, and embedder as-is.
struct ImageRecord {
  std::string image_id;
  std::string source;                // file path, or the fixture id
  std::optional<std::string> bytes;  // raw file contents when read from disk
  std::optional<int> width;
  std::optional<int> height;
};

/// Treats `ref` as a file path when such a file exists, otherwise as a
/// fixture id resolved by the backend. Throws InvalidInput on an empty ref and
/// IoError when an existing file cannot be read.
ImageRecord resolve_image(const std::string& ref);

}  // namespace cmsg

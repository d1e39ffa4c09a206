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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

// Small text utilities shared by the lexicon, tagger, and fake backends.
namespace cmsg::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);

/// Lowercases and splits on whitespace and punctuation. Apostrophes and
/// hyphens survive only between word characters ("don't", "well-known");
/// bytes >= 0x80 count as word characters so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view sentence);

/// Same boundaries as tokenize() with the original casing kept.
std::vector<std::string> tokenize_surface(std::string_view sentence);

/// tokenize() followed by a single-space join.
std::string normalize(std::string_view sentence);

/// False when a sentence terminator (. ! ?) appears before the trailing run of
/// terminators. A period between two digits is not a terminator.
bool is_single_sentence(std::string_view sentence);

std::string join(std::span<const std::string> words, std::string_view sep = " ");

/// Splits on tabs, keeping empty fields.
std::vector<std::string_view> split_tabs(std::string_view line);

/// True when `needle` occurs in `haystack` as a run of consecutive tokens.
bool contains_phrase(std::span<const std::string> haystack,
                     std::span<const std::string> needle);

/// 64-bit FNV-1a. Stable across processes and platforms.
std::uint64_t fnv1a64(std::string_view data,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);

/// One lowercase entry per line; blank lines and `#` comments skipped.
std::unordered_set<std::string> read_word_list(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace cmsg::text

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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cmsg {

/// Part-of-speech code. `other` marks closed-class tokens and never appears
/// in lexicon rows.
enum class PosTag { noun, verb, adjective, adverb, other };

/// Single-letter code used by the lexicon files: n, v, a, r, or "other".
std::string_view pos_code(PosTag tag);
std::optional<PosTag> parse_pos_code(std::string_view code);

struct LexiconEntry {
  PosTag pos_tag = PosTag::noun;
  std::int64_t synset_id = 0;
  double pos_score = 0.0;
  double neg_score = 0.0;
  std::vector<std::string> lemmas;

  bool operator==(const LexiconEntry&) const = default;
};

struct AntonymRow {
  std::string lemma;
  PosTag pos_tag = PosTag::adjective;
  std::string antonym;

  bool operator==(const AntonymRow&) const = default;
};

/// Sentiment scores and the antonym relation, indexed for lookup.
/// Immutable once constructed; lookups on absent keys return empty results.
class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(std::vector<LexiconEntry> entries, std::vector<AntonymRow> antonyms);

  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const LexiconEntry> entries() const noexcept { return entries_; }
  std::span<const AntonymRow> antonym_rows() const noexcept { return antonyms_; }

  /// Maximum neg_score over every sense of `word`, optionally restricted to
  /// one part of speech. 0 when the word is absent.
  double negativity(std::string_view word,
                    std::optional<PosTag> pos = std::nullopt) const;

  bool contains(std::string_view word,
                std::optional<PosTag> pos = std::nullopt) const;

  /// Antonyms in file order, duplicates removed.
  std::vector<std::string> antonyms_for(std::string_view word, PosTag pos) const;

  /// antonyms_for() across all parts of speech, n/v/a/r order.
  std::vector<std::string> antonyms_any(std::string_view word) const;

 private:
  std::vector<LexiconEntry> entries_;
  std::vector<AntonymRow> antonyms_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_lemma_;
  std::unordered_map<std::string, std::vector<std::size_t>> antonyms_by_key_;
};

/// Parses the six-column sentiment-lexicon TSV
/// (POS, ID, PosScore, NegScore, SynsetTerms, Gloss). `#` lines are comments.
/// Throws IoError or ParseError (with 1-based line number).
std::vector<LexiconEntry> parse_sentiment_lexicon(const std::filesystem::path& path);

/// Parses the three-column antonym TSV (lemma, pos, antonym).
std::vector<AntonymRow> parse_antonym_table(const std::filesystem::path& path);

/// Lexicon with sentiment entries only.
Lexicon load_sentiment_lexicon(const std::filesystem::path& path);

Lexicon load_lexicon(const std::filesystem::path& sentiment_path,
                     const std::filesystem::path& antonym_path);

}  // namespace cmsg

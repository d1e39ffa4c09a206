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
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cmsg/lexicon.hpp"

namespace cmsg {

struct Token {
  std::string surface;
  std::string lower;
  PosTag pos_tag = PosTag::other;
  std::size_t index = 0;
};

/// Deterministic rule tagger driven by plain-text word lists.
///
/// Precedence: closed-class list -> other; noun exceptions -> n; adjective
/// list -> a; verb list -> v; then suffixes (-ly -> r; -ing/-ed -> v;
/// -ous/-ful/-ive/-y -> a); everything else -> n.
class RuleTagger {
 public:
  struct WordLists {
    std::unordered_set<std::string> closed_class;
    std::unordered_set<std::string> nouns;
    std::unordered_set<std::string> adjectives;
    std::unordered_set<std::string> verbs;
    std::unordered_set<std::string> stopwords;
  };

  RuleTagger() = default;
  explicit RuleTagger(WordLists lists) : lists_(std::move(lists)) {}

  /// Reads closed_class.txt, nouns.txt, adjectives.txt, verbs.txt and
  /// stopwords.txt from `dir`.
  static RuleTagger load(const std::filesystem::path& dir);

  PosTag tag_word(std::string_view lower) const;

  /// Throws InvalidInput when the sentence has no tokens.
  std::vector<Token> tag(std::string_view sentence) const;

  bool is_stopword(std::string_view lower) const;

 private:
  WordLists lists_;
};

std::vector<Token> tag_pos(std::string_view sentence, const RuleTagger& tagger);

/// Indices of open-class tokens present in the lexicon whose negativity is at
/// least `tau`, ascending.
std::vector<std::size_t> identify_evaluative(const std::vector<Token>& tokens,
                                             const Lexicon& lex, double tau);

struct Substitution {
  std::size_t index = 0;
  std::string original;
  std::string replacement;

  bool operator==(const Substitution&) const = default;
};

struct RtvAdvisory {
  enum class Reason { no_antonym, negative_replacement };
  std::size_t index = 0;
  std::string word;
  Reason reason = Reason::no_antonym;
};

struct RtvResult {
  std::string first_sentence;
  std::vector<Substitution> substitutions;
  std::vector<RtvAdvisory> advisories;
  bool changed = false;
};

/// Replaces every evaluative-negative word that has an antonym with its first
/// antonym, left to right. Output is lowercased and single-space joined.
RtvResult reverse_valence(std::string_view caption, const Lexicon& lex,
                          const RuleTagger& tagger, double tau = 0.5);

}  // namespace cmsg

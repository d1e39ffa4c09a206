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

#include "cmsg/valence.hpp"

#include "cmsg/errors.hpp"
#include "cmsg/text.hpp"

namespace cmsg {

namespace {

bool ends_with(std::string_view word, std::string_view suffix) {
  return word.size() > suffix.size() && word.ends_with(suffix);
}

}  // namespace

RuleTagger RuleTagger::load(const std::filesystem::path& dir) {
  WordLists lists;
  lists.closed_class = text::read_word_list(dir / "closed_class.txt");
  lists.nouns = text::read_word_list(dir / "nouns.txt");
  lists.adjectives = text::read_word_list(dir / "adjectives.txt");
  lists.verbs = text::read_word_list(dir / "verbs.txt");
  lists.stopwords = text::read_word_list(dir / "stopwords.txt");
  return RuleTagger(std::move(lists));
}

PosTag RuleTagger::tag_word(std::string_view lower) const {
  const std::string w(lower);
  if (lists_.closed_class.contains(w)) return PosTag::other;
  if (lists_.nouns.contains(w)) return PosTag::noun;
  if (lists_.adjectives.contains(w)) return PosTag::adjective;
  if (lists_.verbs.contains(w)) return PosTag::verb;
  if (ends_with(w, "ly")) return PosTag::adverb;
  if (ends_with(w, "ing") || ends_with(w, "ed")) return PosTag::verb;
  if (ends_with(w, "ous") || ends_with(w, "ful") || ends_with(w, "ive") ||
      ends_with(w, "y")) {
    return PosTag::adjective;
  }
  return PosTag::noun;
}

std::vector<Token> RuleTagger::tag(std::string_view sentence) const {
  auto surfaces = text::tokenize_surface(sentence);
  if (surfaces.empty()) throw InvalidInput("cannot tag an empty sentence");
  std::vector<Token> tokens;
  tokens.reserve(surfaces.size());
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    Token t;
    t.lower = text::to_lower(surfaces[i]);
    t.surface = std::move(surfaces[i]);
    t.pos_tag = tag_word(t.lower);
    t.index = i;
    tokens.push_back(std::move(t));
  }
  return tokens;
}

bool RuleTagger::is_stopword(std::string_view lower) const {
  const std::string w(lower);
  return lists_.stopwords.contains(w) || lists_.closed_class.contains(w);
}

std::vector<Token> tag_pos(std::string_view sentence, const RuleTagger& tagger) {
  return tagger.tag(sentence);
}

std::vector<std::size_t> identify_evaluative(const std::vector<Token>& tokens,
                                             const Lexicon& lex, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidInput("tau must lie in [0,1]");
  std::vector<std::size_t> out;
  for (const auto& t : tokens) {
    if (t.pos_tag == PosTag::other) continue;
    if (!lex.contains(t.lower, t.pos_tag)) continue;
    if (lex.negativity(t.lower, t.pos_tag) >= tau) out.push_back(t.index);
  }
  return out;
}

RtvResult reverse_valence(std::string_view caption, const Lexicon& lex,
                          const RuleTagger& tagger, double tau) {
  const auto tokens = tagger.tag(caption);
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const auto& t : tokens) words.push_back(t.lower);

  RtvResult result;
  for (const auto idx : identify_evaluative(tokens, lex, tau)) {
    const auto& tok = tokens[idx];
    const auto antonyms = lex.antonyms_for(tok.lower, tok.pos_tag);
    if (antonyms.empty()) {
      result.advisories.push_back({idx, tok.lower, RtvAdvisory::Reason::no_antonym});
      continue;
    }
    const auto& replacement = antonyms.front();
    words[idx] = replacement;
    result.substitutions.push_back({idx, tok.lower, replacement});
    if (lex.negativity(replacement, tok.pos_tag) >= tau) {
      result.advisories.push_back(
          {idx, replacement, RtvAdvisory::Reason::negative_replacement});
    }
  }
  result.first_sentence = text::join(words);
  result.changed = !result.substitutions.empty();
  return result;
}

}  // namespace cmsg

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

#include "cmsg/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "cmsg/errors.hpp"
#include "cmsg/text.hpp"

namespace cmsg {

namespace {

constexpr double kScoreSlack = 1e-9;

std::string antonym_key(std::string_view lemma, PosTag pos) {
  std::string key(lemma);
  key.push_back('\t');
  key.append(pos_code(pos));
  return key;
}

double parse_score(std::string_view field, const std::string& file,
                   std::size_t line, std::string_view column) {
  const auto t = text::trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ParseError(file, line, "unparsable " + std::string(column) + " '" +
                                     std::string(field) + "'");
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ParseError(file, line, std::string(column) + " out of range [0,1]");
  }
  return value;
}

PosTag parse_row_pos(std::string_view field, const std::string& file,
                     std::size_t line) {
  const auto pos = parse_pos_code(text::trim(field));
  if (!pos || *pos == PosTag::other) {
    throw ParseError(file, line, "bad part-of-speech code '" + std::string(field) + "'");
  }
  return *pos;
}

// Calls `fn(line_number, line)` for every non-blank, non-comment line.
template <typename Fn>
void for_each_data_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    fn(number, std::string_view(line));
  }
  if (in.bad()) throw IoError("read failure on " + path.string());
}

}  // namespace

std::string_view pos_code(PosTag tag) {
  switch (tag) {
    case PosTag::noun: return "n";
    case PosTag::verb: return "v";
    case PosTag::adjective: return "a";
    case PosTag::adverb: return "r";
    case PosTag::other: return "other";
  }
  return "other";
}

std::optional<PosTag> parse_pos_code(std::string_view code) {
  if (code == "n") return PosTag::noun;
  if (code == "v") return PosTag::verb;
  if (code == "a") return PosTag::adjective;
  if (code == "r") return PosTag::adverb;
  if (code == "other") return PosTag::other;
  return std::nullopt;
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries, std::vector<AntonymRow> antonyms)
    : entries_(std::move(entries)), antonyms_(std::move(antonyms)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (const auto& lemma : entries_[i].lemmas) {
      auto& slots = by_lemma_[lemma];
      if (slots.empty() || slots.back() != i) slots.push_back(i);
    }
  }
  for (std::size_t i = 0; i < antonyms_.size(); ++i) {
    antonyms_by_key_[antonym_key(antonyms_[i].lemma, antonyms_[i].pos_tag)].push_back(i);
  }
}

double Lexicon::negativity(std::string_view word, std::optional<PosTag> pos) const {
  const auto it = by_lemma_.find(std::string(word));
  if (it == by_lemma_.end()) return 0.0;
  double best = 0.0;
  for (const auto idx : it->second) {
    const auto& e = entries_[idx];
    if (pos && e.pos_tag != *pos) continue;
    best = std::max(best, e.neg_score);
  }
  return best;
}

bool Lexicon::contains(std::string_view word, std::optional<PosTag> pos) const {
  const auto it = by_lemma_.find(std::string(word));
  if (it == by_lemma_.end()) return false;
  if (!pos) return true;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](std::size_t idx) { return entries_[idx].pos_tag == *pos; });
}

std::vector<std::string> Lexicon::antonyms_for(std::string_view word, PosTag pos) const {
  std::vector<std::string> out;
  const auto it = antonyms_by_key_.find(antonym_key(word, pos));
  if (it == antonyms_by_key_.end()) return out;
  for (const auto idx : it->second) {
    const auto& candidate = antonyms_[idx].antonym;
    if (std::find(out.begin(), out.end(), candidate) == out.end()) {
      out.push_back(candidate);
    }
  }
  return out;
}

std::vector<std::string> Lexicon::antonyms_any(std::string_view word) const {
  std::vector<std::string> out;
  for (const auto pos : {PosTag::noun, PosTag::verb, PosTag::adjective, PosTag::adverb}) {
    for (auto& a : antonyms_for(word, pos)) {
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
    }
  }
  return out;
}

std::vector<LexiconEntry> parse_sentiment_lexicon(const std::filesystem::path& path) {
  const auto file = path.string();
  std::vector<LexiconEntry> entries;
  for_each_data_line(path, [&](std::size_t line, std::string_view row) {
    const auto fields = text::split_tabs(row);
    if (fields.size() != 6) {
      throw ParseError(file, line, "expected 6 columns, found " +
                                       std::to_string(fields.size()));
    }
    LexiconEntry entry;
    entry.pos_tag = parse_row_pos(fields[0], file, line);

    const auto id = text::trim(fields[1]);
    const auto [ptr, ec] =
        std::from_chars(id.data(), id.data() + id.size(), entry.synset_id);
    if (id.empty() || ec != std::errc{} || ptr != id.data() + id.size()) {
      throw ParseError(file, line, "unparsable synset id '" + std::string(id) + "'");
    }

    entry.pos_score = parse_score(fields[2], file, line, "PosScore");
    entry.neg_score = parse_score(fields[3], file, line, "NegScore");
    if (entry.pos_score + entry.neg_score > 1.0 + kScoreSlack) {
      throw ParseError(file, line, "PosScore + NegScore exceeds 1");
    }

    std::string_view terms = fields[4];
    std::size_t start = 0;
    while (start < terms.size()) {
      auto end = terms.find(' ', start);
      if (end == std::string_view::npos) end = terms.size();
      const auto term = terms.substr(start, end - start);
      start = end + 1;
      if (term.empty()) continue;
      const auto hash = term.rfind('#');
      const auto lemma = hash == std::string_view::npos ? term : term.substr(0, hash);
      if (lemma.empty()) {
        throw ParseError(file, line, "empty lemma in '" + std::string(term) + "'");
      }
      entry.lemmas.push_back(text::to_lower(lemma));
    }
    if (entry.lemmas.empty()) throw ParseError(file, line, "no synset terms");
    entries.push_back(std::move(entry));
  });
  return entries;
}

std::vector<AntonymRow> parse_antonym_table(const std::filesystem::path& path) {
  const auto file = path.string();
  std::vector<AntonymRow> rows;
  for_each_data_line(path, [&](std::size_t line, std::string_view row) {
    const auto fields = text::split_tabs(row);
    if (fields.size() != 3) {
      throw ParseError(file, line, "expected 3 columns, found " +
                                       std::to_string(fields.size()));
    }
    AntonymRow parsed;
    parsed.lemma = text::to_lower(text::trim(fields[0]));
    parsed.pos_tag = parse_row_pos(fields[1], file, line);
    parsed.antonym = text::to_lower(text::trim(fields[2]));
    if (parsed.lemma.empty() || parsed.antonym.empty()) {
      throw ParseError(file, line, "empty lemma or antonym");
    }
    const auto tokens = text::tokenize(parsed.antonym);
    // Substitution is token-for-token; multi-word antonyms are dropped here.
    if (tokens.size() != 1 || tokens.front() != parsed.antonym) return;
    rows.push_back(std::move(parsed));
  });
  return rows;
}

Lexicon load_sentiment_lexicon(const std::filesystem::path& path) {
  return Lexicon(parse_sentiment_lexicon(path), {});
}

Lexicon load_lexicon(const std::filesystem::path& sentiment_path,
                     const std::filesystem::path& antonym_path) {
  return Lexicon(parse_sentiment_lexicon(sentiment_path), parse_antonym_table(antonym_path));
}

}  // namespace cmsg

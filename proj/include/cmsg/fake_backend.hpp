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
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <Eigen/Core>

#include "cmsg/backends.hpp"
#include "cmsg/generation.hpp"
#include "cmsg/lexicon.hpp"

namespace cmsg {

/// Sidecar describing what a test image "contains". Stands in for pixels.
struct FixtureImage {
  struct ConsequenceRule {
    std::vector<std::string> keywords;  // all must be present in the request
    std::vector<WireConsequence> phrases;
  };

  std::string image_id;
  std::vector<WireTag> declared_tags;
  std::string declared_caption;
  std::string declared_sentiment = "negative";
  std::vector<ConsequenceRule> consequence_map;
  std::string corpus_ref = "mini";
};

void to_json(json& j, const FixtureImage& f);
/// Throws InvalidInput when the sidecar breaks a tag or caption invariant.
void from_json(const json& j, FixtureImage& f);

FixtureImage load_fixture(const std::filesystem::path& path);
/// Every *.json sidecar in `dir`, sorted by file name.
std::vector<FixtureImage> load_fixture_dir(const std::filesystem::path& dir);

inline constexpr int kFakeEmbeddingDim = 64;
inline constexpr std::uint64_t kFakeEmbeddingSeed = 0x9e3779b97f4a7c15ULL;

/// Token unigrams and bigrams hashed into 64 buckets, L2-normalized.
/// Throws InvalidInput when `text` has no tokens.
Eigen::VectorXd fake_embed(std::string_view text);
/// fake_embed over the declared tag labels followed by the declared caption.
Eigen::VectorXd fake_embed(const FixtureImage& image);

/// contradict = min(1, 0.2 * negations + 0.6 * antonym pairs), where
/// negations counts markers the hypothesis adds over the premise and antonym
/// pairs link a premise-only token to a hypothesis-only token.
/// entail = Jaccard(token sets) * (1 - contradict); neutral takes the rest.
NliProbs fake_nli(std::string_view premise, std::string_view hypothesis,
                  const Lexicon& antonyms);

/// Deterministic template fill; every keyword appears verbatim, in order.
std::string fake_generate(const std::vector<std::string>& keywords,
                          std::string_view model_id);

/// Add-one smoothed bigram model over a sentence-per-line corpus.
class BigramLm {
 public:
  BigramLm() = default;
  explicit BigramLm(const std::vector<std::string>& sentences);
  static BigramLm load(const std::filesystem::path& corpus);

  /// mean_nll over the text's tokens plus the end marker; token_count is
  /// that number of predictions.
  PplResult score(std::string_view text) const;
  std::size_t vocabulary_size() const { return vocab_size_; }

 private:
  std::unordered_map<std::string, std::uint64_t> context_counts_;
  std::unordered_map<std::string, std::uint64_t> bigram_counts_;
  std::unordered_set<std::string> known_;
  std::size_t vocab_size_ = 0;
};

struct FakeOptions {
  std::filesystem::path fixtures_dir;
  std::filesystem::path antonyms_path;
  std::filesystem::path corpus_path;
};

/// In-process implementation of every /v1 service. Pure function of the
/// request and the loaded fixture data.
class FakeBackend {
 public:
  FakeBackend(std::vector<FixtureImage> fixtures, Lexicon antonyms, BigramLm lm);
  static std::shared_ptr<const FakeBackend> load(const FakeOptions& options);

  /// Serves one request body for a /v1 path. Errors come back as
  /// {"error": {code, message}} with a non-2xx status.
  WireResponse handle(std::string_view path, std::string_view body) const;

  const FixtureImage* find(std::string_view image_id) const;
  std::vector<WireConsequence> consequences(const std::vector<std::string>& keywords) const;
  const Lexicon& antonyms() const { return antonyms_; }
  const BigramLm& lm() const { return lm_; }
  const std::vector<FixtureImage>& fixtures() const { return fixtures_; }

 private:
  json serve(Service service, const json& request) const;
  FixtureImage resolve_image(const json& request) const;

  std::vector<FixtureImage> fixtures_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  Lexicon antonyms_;
  BigramLm lm_;
};

/// Transport that answers from a FakeBackend without a socket.
class FakeTransport final : public Transport {
 public:
  explicit FakeTransport(std::shared_ptr<const FakeBackend> backend)
      : backend_(std::move(backend)) {}
  WireResponse post(const std::string& path, const std::string& body,
                    std::chrono::milliseconds timeout) override;

 private:
  std::shared_ptr<const FakeBackend> backend_;
};

/// Serves a FakeBackend over HTTP on a background thread.
class FakeServer {
 public:
  explicit FakeServer(std::shared_ptr<const FakeBackend> backend);
  ~FakeServer();
  FakeServer(const FakeServer&) = delete;
  FakeServer& operator=(const FakeServer&) = delete;

  /// Binds to `host`; port 0 picks a free port. Returns the bound port.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  /// Blocks serving on the calling thread.
  bool listen(const std::string& host, int port);
  void stop();
  std::string url() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cmsg

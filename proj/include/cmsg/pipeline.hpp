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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmsg/backends.hpp"
#include "cmsg/extraction.hpp"
#include "cmsg/fake_backend.hpp"
#include "cmsg/generation.hpp"
#include "cmsg/lexicon.hpp"
#include "cmsg/ranking.hpp"
#include "cmsg/valence.hpp"

namespace cmsg {

inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr int kRunRecordSchema = 1;

/// Directory holding the bundled lexicon, tagger lists, corpus and fixtures.
/// $CMSG_DATA_DIR wins over the path compiled in.
std::filesystem::path default_data_dir();

struct PipelineConfig {
  double tau = 0.5;
  PlanConfig plan;
  RankerConfig ranker;
  Sentiment caption_sentiment = Sentiment::negative;

  BackendEndpointConfig backend;
  std::map<Service, BackendEndpointConfig> services;  // per-service overrides

  std::filesystem::path sentiwordnet;
  std::filesystem::path antonyms;
  std::filesystem::path tagger_dir;
  FakeOptions fake;

  std::size_t workers = 0;  // 0: hardware concurrency
  std::size_t generation_parallelism = 1;

  /// Defaults with every path pointing into `data_dir`.
  static PipelineConfig defaults(const std::filesystem::path& data_dir = default_data_dir());

  /// Throws InvalidInput on out-of-range fields or when both use_consequence
  /// and use_tags are off.
  void validate() const;

  /// 16 hex digits of FNV-1a over the canonical JSON form.
  std::string fingerprint() const;
};

void to_json(json& j, const PipelineConfig& c);
/// Missing keys keep the values already in `c`; unknown keys are rejected.
void from_json(const json& j, PipelineConfig& c);

/// Ablation shorthands: woCS, woTag, woS, woGI.
void apply_ablation(PipelineConfig& config, std::string_view name);

struct RunRecord {
  std::string image_id;
  std::string source;
  bool ok = false;
  std::string failure_kind;
  std::string failure_reason;

  std::string caption;
  std::string caption_sentiment;
  std::string first_sentence;
  std::vector<Substitution> substitutions;
  std::vector<std::string> rtv_advisories;

  TagSet tags;
  std::vector<std::string> keywords;
  std::vector<Consequence> consequences;
  bool consequence_fallback = false;

  std::vector<CandidateText> candidates;
  std::vector<ScoreBreakdown> scores;
  std::vector<std::size_t> ranking;
  std::optional<std::size_t> selected_index;
  // Relation of the selected candidate, measured even when the ranker masks
  // that factor so evaluation stays comparable across ablations.
  std::optional<double> selected_relation;
  std::vector<std::string> warnings;

  json config;
  std::string config_fingerprint;
  std::string engine_version = kEngineVersion;
  std::string started_at;
  std::string finished_at;

  const CandidateText* selected() const {
    return selected_index ? &candidates.at(*selected_index) : nullptr;
  }
};

void to_json(json& j, const RunRecord& r);
void from_json(const json& j, RunRecord& r);

/// Loaded lexicon, tagger, and backend client for one configuration.
/// Read-only after construction; run_single may be called concurrently.
class Engine {
 public:
  explicit Engine(PipelineConfig config);
  Engine(PipelineConfig config, std::shared_ptr<const Lexicon> lexicon,
         std::shared_ptr<const RuleTagger> tagger, std::shared_ptr<const BackendClient> backend);

  /// Never throws for image-level problems; they land in the record.
  RunRecord run_single(const ImageRecord& image) const;

  /// One record per manifest entry, in manifest order.
  std::vector<RunRecord> run_batch(const std::vector<std::string>& manifest) const;

  const PipelineConfig& config() const { return config_; }
  const BackendClient& backend() const { return *backend_; }
  const Lexicon& lexicon() const { return *lexicon_; }
  const RuleTagger& tagger() const { return *tagger_; }

 private:
  void run_stages(const ImageRecord& image, RunRecord& record) const;

  PipelineConfig config_;
  std::shared_ptr<const Lexicon> lexicon_;
  std::shared_ptr<const RuleTagger> tagger_;
  std::shared_ptr<const BackendClient> backend_;
};

/// Builds the client for `config`, sharing one FakeBackend across every
/// service routed to "fake:".
std::shared_ptr<const BackendClient> make_backend_client(const PipelineConfig& config);

/// Lines of the manifest, skipping blanks and `#` comments.
std::vector<std::string> read_manifest(const std::filesystem::path& path);

/// One compact JSON record per line. Throws IoError when unwritable.
void write_run_records(const std::filesystem::path& path, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_run_records(const std::filesystem::path& path);

/// A record line with its timestamps removed, for reproducibility diffs.
std::string strip_timestamps(const std::string& line);

}  // namespace cmsg

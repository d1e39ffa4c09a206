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

#include "cmsg/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>
#include <thread>

#include "cmsg/text.hpp"

#ifndef CMSG_DATA_DIR
#define CMSG_DATA_DIR "data"
#endif

namespace cmsg {

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

std::size_t get_count(const json& j, const char* key, std::size_t fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer() || it->get<long long>() < 0) {
    throw InvalidInput(std::string("config '") + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(it->get<long long>());
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw InvalidInput(std::string("config '") + key + "' has the wrong type");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// JSON forms of the record parts

void to_json(json& j, const Tag& t) { j = json{{"label", t.label}, {"confidence", t.confidence}}; }
void from_json(const json& j, Tag& t) {
  t.label = j.at("label").get<std::string>();
  t.confidence = j.at("confidence").get<double>();
}

void to_json(json& j, const Substitution& s) {
  j = json{{"index", s.index}, {"original", s.original}, {"replacement", s.replacement}};
}
void from_json(const json& j, Substitution& s) {
  s.index = j.at("index").get<std::size_t>();
  s.original = j.at("original").get<std::string>();
  s.replacement = j.at("replacement").get<std::string>();
}

void to_json(json& j, const Consequence& c) {
  j = json{{"phrase", c.phrase}, {"relation", c.source_relation}, {"score", c.score}};
}
void from_json(const json& j, Consequence& c) {
  c.phrase = j.at("phrase").get<std::string>();
  c.source_relation = j.at("relation").get<std::string>();
  c.score = j.at("score").get<double>();
}

void to_json(json& j, const CandidateText& c) {
  j = json{{"candidate_id", c.candidate_id},
           {"first_sentence", c.first_sentence},
           {"rest_text", c.rest_text},
           {"full_text", c.full_text},
           {"provenance",
            {{"model_id", c.provenance.model_id},
             {"keywords", c.provenance.keywords},
             {"consequence_used", c.provenance.consequence_used},
             {"tags_used", c.provenance.tags_used}}}};
}
void from_json(const json& j, CandidateText& c) {
  c.candidate_id = j.at("candidate_id").get<int>();
  c.first_sentence = j.at("first_sentence").get<std::string>();
  c.rest_text = j.at("rest_text").get<std::string>();
  c.full_text = j.at("full_text").get<std::string>();
  const auto& p = j.at("provenance");
  c.provenance.model_id = p.at("model_id").get<std::string>();
  c.provenance.keywords = p.at("keywords").get<std::vector<std::string>>();
  c.provenance.consequence_used = p.at("consequence_used").get<bool>();
  c.provenance.tags_used = p.at("tags_used").get<std::vector<std::string>>();
}

void to_json(json& j, const ScoreBreakdown& s) {
  j = json{{"relation", s.relation},
           {"sarcasticness", s.sarcasticness},
           {"grammaticality", s.grammaticality},
           {"composite", s.composite},
           {"factor_mask",
            {{"relation", s.factor_mask.relation},
             {"sarcasticness", s.factor_mask.sarcasticness},
             {"grammaticality", s.factor_mask.grammaticality}}}};
}
void from_json(const json& j, ScoreBreakdown& s) {
  s.relation = j.at("relation").get<double>();
  s.sarcasticness = j.at("sarcasticness").get<double>();
  s.grammaticality = j.at("grammaticality").get<double>();
  s.composite = j.at("composite").get<double>();
  const auto& m = j.at("factor_mask");
  s.factor_mask = {m.at("relation").get<bool>(), m.at("sarcasticness").get<bool>(),
                   m.at("grammaticality").get<bool>()};
}

// ---------------------------------------------------------------------------
// Configuration

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("CMSG_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return CMSG_DATA_DIR;
}

PipelineConfig PipelineConfig::defaults(const std::filesystem::path& data_dir) {
  PipelineConfig c;
  c.sentiwordnet = data_dir / "lexicon" / "mini_sentiwordnet.tsv";
  c.antonyms = data_dir / "lexicon" / "antonyms.tsv";
  c.tagger_dir = data_dir / "tagger";
  c.fake.fixtures_dir = data_dir / "fixtures" / "images";
  c.fake.antonyms_path = c.antonyms;
  c.fake.corpus_path = data_dir / "corpus" / "mini_corpus.txt";
  if (const char* env = std::getenv("CMSG_BACKEND_URL"); env != nullptr && *env != '\0') {
    c.backend.base_url = env;
  }
  return c;
}

void PipelineConfig::validate() const {
  if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidInput("tau must lie in [0,1]");
  plan.validate();
  ranker.validate();
  backend.validate();
  for (const auto& [service, endpoint] : services) endpoint.validate();
}

std::string PipelineConfig::fingerprint() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(text::fnv1a64(json(*this).dump())));
  return buf;
}

void to_json(json& j, const PipelineConfig& c) {
  json services = json::object();
  for (const auto& [s, e] : c.services) services[std::string(service_name(s))] = e;
  j = json{{"tau", c.tau},
           {"n_cons", c.plan.n_cons},
           {"t1", c.plan.t1},
           {"t2", c.plan.t2},
           {"k_max", c.plan.k_max},
           {"model_ids", c.plan.model_ids},
           {"use_consequence", c.plan.use_consequence},
           {"use_tags", c.plan.use_tags},
           {"clip_weight", c.ranker.clip_weight},
           {"rank_sarcasticness", c.ranker.rank_sarcasticness},
           {"rank_grammar_and_relation", c.ranker.rank_grammar_and_relation},
           {"style_token", c.ranker.style_token},
           {"caption_sentiment", sentiment_name(c.caption_sentiment)},
           {"backend", c.backend},
           {"services", services},
           {"sentiwordnet", c.sentiwordnet.string()},
           {"antonyms", c.antonyms.string()},
           {"tagger_dir", c.tagger_dir.string()},
           {"fake",
            {{"fixtures_dir", c.fake.fixtures_dir.string()},
             {"antonyms", c.fake.antonyms_path.string()},
             {"corpus", c.fake.corpus_path.string()}}},
           {"workers", c.workers},
           {"generation_parallelism", c.generation_parallelism}};
}

void from_json(const json& j, PipelineConfig& c) {
  static const std::set<std::string> known = {
      "tau",         "n_cons",         "t1",       "t2",
      "k_max",       "model_ids",      "use_consequence", "use_tags",
      "clip_weight", "rank_sarcasticness", "rank_grammar_and_relation", "style_token",
      "caption_sentiment", "backend",  "services", "sentiwordnet",
      "antonyms",    "tagger_dir",     "fake",     "workers",
      "generation_parallelism"};
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw InvalidInput("unknown config key '" + key + "'");
  }
  c.tau = get_or(j, "tau", c.tau);
  c.plan.n_cons = get_count(j, "n_cons", c.plan.n_cons);
  c.plan.t1 = get_count(j, "t1", c.plan.t1);
  c.plan.t2 = get_count(j, "t2", c.plan.t2);
  c.plan.k_max = get_count(j, "k_max", c.plan.k_max);
  c.plan.model_ids = get_or(j, "model_ids", c.plan.model_ids);
  c.plan.use_consequence = get_or(j, "use_consequence", c.plan.use_consequence);
  c.plan.use_tags = get_or(j, "use_tags", c.plan.use_tags);
  c.ranker.clip_weight = get_or(j, "clip_weight", c.ranker.clip_weight);
  c.ranker.rank_sarcasticness = get_or(j, "rank_sarcasticness", c.ranker.rank_sarcasticness);
  c.ranker.rank_grammar_and_relation =
      get_or(j, "rank_grammar_and_relation", c.ranker.rank_grammar_and_relation);
  c.ranker.style_token = get_or(j, "style_token", c.ranker.style_token);
  if (j.contains("caption_sentiment")) {
    c.caption_sentiment = parse_sentiment(get_or<std::string>(j, "caption_sentiment", ""));
  }
  if (j.contains("backend")) {
    try {
      c.backend = j.at("backend").get<BackendEndpointConfig>();
    } catch (const json::exception& e) {
      throw InvalidInput(std::string("config 'backend': ") + e.what());
    }
  }
  if (j.contains("services")) {
    c.services.clear();
    for (const auto& [name, value] : j.at("services").items()) {
      const auto s = parse_service(name);
      if (!s) throw InvalidInput("unknown service '" + name + "' in config");
      BackendEndpointConfig e = c.backend;
      try {
        from_json(value, e);
      } catch (const json::exception& ex) {
        throw InvalidInput("config service '" + name + "': " + ex.what());
      }
      c.services[*s] = e;
    }
  }
  c.sentiwordnet = get_or(j, "sentiwordnet", c.sentiwordnet.string());
  c.antonyms = get_or(j, "antonyms", c.antonyms.string());
  c.tagger_dir = get_or(j, "tagger_dir", c.tagger_dir.string());
  if (j.contains("fake")) {
    const auto& f = j.at("fake");
    c.fake.fixtures_dir = get_or(f, "fixtures_dir", c.fake.fixtures_dir.string());
    c.fake.antonyms_path = get_or(f, "antonyms", c.fake.antonyms_path.string());
    c.fake.corpus_path = get_or(f, "corpus", c.fake.corpus_path.string());
  }
  c.workers = get_count(j, "workers", c.workers);
  c.generation_parallelism = get_count(j, "generation_parallelism", c.generation_parallelism);
}

void apply_ablation(PipelineConfig& config, std::string_view name) {
  if (name == "woCS") {
    config.plan.use_consequence = false;
  } else if (name == "woTag") {
    config.plan.use_tags = false;
  } else if (name == "woS") {
    config.ranker.rank_sarcasticness = false;
  } else if (name == "woGI") {
    config.ranker.rank_grammar_and_relation = false;
  } else {
    throw InvalidInput("unknown ablation '" + std::string(name) + "'");
  }
}

// ---------------------------------------------------------------------------
// Run records

void to_json(json& j, const RunRecord& r) {
  json subs = json::array();
  for (const auto& s : r.substitutions) subs.push_back(s);
  json cons = json::array();
  for (const auto& c : r.consequences) cons.push_back(c);
  json cands = json::array();
  for (const auto& c : r.candidates) cands.push_back(c);
  json scores = json::array();
  for (const auto& s : r.scores) scores.push_back(s);
  json tags = json::array();
  for (const auto& t : r.tags.tags) tags.push_back(t);

  j = json{{"schema", kRunRecordSchema},
           {"image_id", r.image_id},
           {"source", r.source},
           {"ok", r.ok},
           {"failure", r.ok ? json(nullptr)
                            : json{{"kind", r.failure_kind}, {"reason", r.failure_reason}}},
           {"caption", r.caption},
           {"caption_sentiment", r.caption_sentiment},
           {"first_sentence", r.first_sentence},
           {"substitutions", subs},
           {"rtv_advisories", r.rtv_advisories},
           {"tags", tags},
           {"keywords", r.keywords},
           {"consequences", cons},
           {"consequence_fallback", r.consequence_fallback},
           {"candidates", cands},
           {"scores", scores},
           {"ranking", r.ranking},
           {"selected_index", r.selected_index ? json(*r.selected_index) : json(nullptr)},
           {"selected_relation", r.selected_relation ? json(*r.selected_relation) : json(nullptr)},
           {"warnings", r.warnings},
           {"config", r.config},
           {"config_fingerprint", r.config_fingerprint},
           {"engine_version", r.engine_version},
           {"timestamps", {{"started_at", r.started_at}, {"finished_at", r.finished_at}}}};
}

void from_json(const json& j, RunRecord& r) {
  r.image_id = j.at("image_id").get<std::string>();
  r.source = j.value("source", std::string());
  r.ok = j.at("ok").get<bool>();
  if (const auto& f = j.at("failure"); f.is_object()) {
    r.failure_kind = f.at("kind").get<std::string>();
    r.failure_reason = f.at("reason").get<std::string>();
  }
  r.caption = j.at("caption").get<std::string>();
  r.caption_sentiment = j.at("caption_sentiment").get<std::string>();
  r.first_sentence = j.at("first_sentence").get<std::string>();
  r.substitutions = j.at("substitutions").get<std::vector<Substitution>>();
  r.rtv_advisories = j.at("rtv_advisories").get<std::vector<std::string>>();
  r.tags.tags = j.at("tags").get<std::vector<Tag>>();
  r.keywords = j.at("keywords").get<std::vector<std::string>>();
  r.consequences = j.at("consequences").get<std::vector<Consequence>>();
  r.consequence_fallback = j.at("consequence_fallback").get<bool>();
  r.candidates = j.at("candidates").get<std::vector<CandidateText>>();
  r.scores = j.at("scores").get<std::vector<ScoreBreakdown>>();
  r.ranking = j.at("ranking").get<std::vector<std::size_t>>();
  if (const auto& s = j.at("selected_index"); !s.is_null()) r.selected_index = s.get<std::size_t>();
  if (const auto it = j.find("selected_relation"); it != j.end() && !it->is_null()) {
    r.selected_relation = it->get<double>();
  }
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  r.config = j.at("config");
  r.config_fingerprint = j.at("config_fingerprint").get<std::string>();
  r.engine_version = j.at("engine_version").get<std::string>();
  const auto& ts = j.at("timestamps");
  r.started_at = ts.at("started_at").get<std::string>();
  r.finished_at = ts.at("finished_at").get<std::string>();
  if (r.selected_index && *r.selected_index >= r.candidates.size()) {
    throw InvalidInput("record " + r.image_id + ": selected_index out of bounds");
  }
}

std::string strip_timestamps(const std::string& line) {
  auto j = json::parse(line);
  j.erase("timestamps");
  return j.dump();
}

std::vector<std::string> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(t);
  }
  return out;
}

void write_run_records(const std::filesystem::path& path, const std::vector<RunRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& r : records) out << json(r).dump() << '\n';
  out.flush();
  if (!out) throw IoError("write failed on " + path.string());
}

std::vector<RunRecord> read_run_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open run file " + path.string());
  std::vector<RunRecord> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (text::trim(line).empty()) continue;
    auto parsed = json::parse(line, nullptr, false);
    if (parsed.is_discarded()) throw ParseError(path.string(), number, "not valid JSON");
    try {
      out.push_back(parsed.get<RunRecord>());
    } catch (const json::exception& e) {
      throw ParseError(path.string(), number, e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Engine

std::shared_ptr<const BackendClient> make_backend_client(const PipelineConfig& config) {
  std::shared_ptr<const FakeBackend> fake;
  const auto transport_for = [&](const BackendEndpointConfig& e) -> std::shared_ptr<Transport> {
    if (e.is_fake()) {
      if (!fake) fake = FakeBackend::load(config.fake);
      return std::make_shared<FakeTransport>(fake);
    }
    return std::make_shared<HttpTransport>(e.base_url);
  };
  auto client = std::make_shared<BackendClient>(config.backend, transport_for(config.backend));
  for (const auto& [service, endpoint] : config.services) {
    client->set_route(service, endpoint, transport_for(endpoint));
  }
  return client;
}

Engine::Engine(PipelineConfig config)
    : Engine(config,
             std::make_shared<const Lexicon>(load_lexicon(config.sentiwordnet, config.antonyms)),
             std::make_shared<const RuleTagger>(RuleTagger::load(config.tagger_dir)),
             make_backend_client(config)) {}

Engine::Engine(PipelineConfig config, std::shared_ptr<const Lexicon> lexicon,
               std::shared_ptr<const RuleTagger> tagger,
               std::shared_ptr<const BackendClient> backend)
    : config_(std::move(config)),
      lexicon_(std::move(lexicon)),
      tagger_(std::move(tagger)),
      backend_(std::move(backend)) {
  config_.validate();
}

void Engine::run_stages(const ImageRecord& image, RunRecord& record) const {
  record.tags = fetch_tags(image, *backend_);
  const auto caption = fetch_caption(image, *backend_, config_.caption_sentiment);
  record.caption = caption.text;
  record.caption_sentiment = std::string(sentiment_name(caption.sentiment_hint));

  const auto rtv = reverse_valence(caption.text, *lexicon_, *tagger_, config_.tau);
  record.first_sentence = rtv.first_sentence;
  record.substitutions = rtv.substitutions;
  for (const auto& a : rtv.advisories) {
    record.rtv_advisories.push_back(
        a.word + (a.reason == RtvAdvisory::Reason::no_antonym ? " (no antonym)"
                                                              : " (replacement still negative)"));
  }

  record.keywords = extract_keywords(caption, *tagger_).words;
  if (config_.plan.use_consequence) {
    try {
      record.consequences = infer_consequence({record.keywords}, *backend_, config_.plan.n_cons);
    } catch (const ConsequenceUnavailable& e) {
      record.consequence_fallback = true;
      record.warnings.push_back(std::string(e.what()) + "; falling back to tag-only generation");
    }
  }

  const auto plan = build_plan(record.tags, record.consequences, config_.plan);
  auto generated =
      generate_candidates(plan, record.first_sentence, *backend_, config_.generation_parallelism);
  record.candidates = std::move(generated.candidates);
  record.warnings.insert(record.warnings.end(), generated.warnings.begin(), generated.warnings.end());

  const auto mask = config_.ranker.mask();
  Eigen::VectorXd image_embedding;
  if (mask.relation) image_embedding = backend_->embed_image(image);
  for (const auto& c : record.candidates) {
    FactorScores f;
    if (mask.relation) {
      f.relation = relation_score(image_embedding, backend_->embed_text(c.full_text),
                                  config_.ranker.clip_weight);
    }
    if (mask.sarcasticness) f.sarcasticness = sarcasticness_score(c.first_sentence, c.rest_text, *backend_);
    if (mask.grammaticality) f.grammaticality = grammaticality_score(c.full_text, *backend_);
    record.scores.push_back(composite_score(f, config_.ranker));
  }

  const auto ranking = rank_candidates(record.candidates, record.scores);
  record.ranking = ranking.order;
  record.selected_index = ranking.selected;
  const auto& chosen = record.candidates[ranking.selected];
  record.selected_relation =
      mask.relation ? record.scores[ranking.selected].relation
                    : relation_score(backend_->embed_image(image), backend_->embed_text(chosen.full_text),
                                     config_.ranker.clip_weight);
  record.ok = true;
}

RunRecord Engine::run_single(const ImageRecord& image) const {
  RunRecord record;
  record.image_id = image.image_id;
  record.source = image.source;
  record.config = config_;
  record.config_fingerprint = config_.fingerprint();
  record.started_at = utc_now();
  try {
    run_stages(image, record);
  } catch (const Error& e) {
    record.ok = false;
    record.failure_kind = e.kind();
    record.failure_reason = e.what();
  } catch (const std::exception& e) {
    record.ok = false;
    record.failure_kind = "internal";
    record.failure_reason = e.what();
  }
  if (!record.ok) {
    record.candidates.clear();
    record.scores.clear();
    record.ranking.clear();
    record.selected_index.reset();
    record.selected_relation.reset();
  }
  record.finished_at = utc_now();
  return record;
}

std::vector<RunRecord> Engine::run_batch(const std::vector<std::string>& manifest) const {
  std::vector<RunRecord> records(manifest.size());
  const auto run_entry = [&](std::size_t i) {
    try {
      records[i] = run_single(resolve_image(manifest[i]));
    } catch (const Error& e) {
      RunRecord failed;
      failed.image_id = manifest[i];
      failed.source = manifest[i];
      failed.config = config_;
      failed.config_fingerprint = config_.fingerprint();
      failed.started_at = failed.finished_at = utc_now();
      failed.failure_kind = e.kind();
      failed.failure_reason = e.what();
      records[i] = std::move(failed);
    }
  };

  std::size_t workers = config_.workers == 0 ? std::thread::hardware_concurrency() : config_.workers;
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(manifest.size(), 1));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < manifest.size(); i = next++) run_entry(i);
      });
    }
  }
  return records;
}

}  // namespace cmsg

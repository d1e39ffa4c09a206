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

#include "cmsg/fake_backend.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <thread>
#include <unordered_set>

#include "httplib.h"

#include "cmsg/text.hpp"

namespace cmsg {

// ---------------------------------------------------------------------------
// Fixture sidecars

void to_json(json& j, const FixtureImage& f) {
  json tags = json::array();
  for (const auto& t : f.declared_tags) tags.push_back({{"label", t.label}, {"confidence", t.confidence}});
  json rules = json::array();
  for (const auto& r : f.consequence_map) {
    json phrases = json::array();
    for (const auto& p : r.phrases) phrases.push_back({{"phrase", p.phrase}, {"score", p.score}});
    rules.push_back({{"keywords", r.keywords}, {"phrases", phrases}});
  }
  j = json{{"image_id", f.image_id},     {"tags", tags},
           {"caption", f.declared_caption}, {"sentiment", f.declared_sentiment},
           {"consequences", rules},      {"corpus_ref", f.corpus_ref}};
}

void from_json(const json& j, FixtureImage& f) {
  if (!j.is_object()) throw InvalidInput("fixture sidecar is not a JSON object");
  f.image_id = j.at("image_id").get<std::string>();
  if (f.image_id.empty()) throw InvalidInput("fixture image_id is empty");

  f.declared_tags.clear();
  std::set<std::string> labels;
  for (const auto& t : j.value("tags", json::array())) {
    WireTag tag{text::normalize(t.at("label").get<std::string>()), t.at("confidence").get<double>()};
    if (tag.label.empty()) throw InvalidInput(f.image_id + ": empty tag label");
    if (!(tag.confidence >= 0.0 && tag.confidence <= 1.0)) {
      throw InvalidInput(f.image_id + ": tag confidence outside [0,1]");
    }
    if (!labels.insert(tag.label).second) throw InvalidInput(f.image_id + ": duplicate tag " + tag.label);
    f.declared_tags.push_back(std::move(tag));
  }

  f.declared_caption = j.at("caption").get<std::string>();
  if (text::tokenize(f.declared_caption).empty()) throw InvalidInput(f.image_id + ": empty caption");
  if (!text::is_single_sentence(f.declared_caption)) {
    throw InvalidInput(f.image_id + ": caption is not a single sentence");
  }
  f.declared_sentiment = j.value("sentiment", std::string("negative"));

  f.consequence_map.clear();
  for (const auto& r : j.value("consequences", json::array())) {
    FixtureImage::ConsequenceRule rule;
    for (const auto& k : r.at("keywords")) rule.keywords.push_back(text::normalize(k.get<std::string>()));
    for (const auto& p : r.at("phrases")) {
      rule.phrases.push_back({text::normalize(p.at("phrase").get<std::string>()), p.at("score").get<double>()});
    }
    f.consequence_map.push_back(std::move(rule));
  }
  f.corpus_ref = j.value("corpus_ref", std::string("mini"));
}

FixtureImage load_fixture(const std::filesystem::path& path) {
  auto parsed = json::parse(text::read_file(path), nullptr, false);
  if (parsed.is_discarded()) throw InvalidInput(path.string() + ": not valid JSON");
  try {
    return parsed.get<FixtureImage>();
  } catch (const json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

std::vector<FixtureImage> load_fixture_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list fixture directory " + dir.string());
  std::sort(files.begin(), files.end());
  std::vector<FixtureImage> out;
  for (const auto& f : files) out.push_back(load_fixture(f));
  return out;
}

// ---------------------------------------------------------------------------
// Embedding

Eigen::VectorXd fake_embed(std::string_view input) {
  const auto tokens = text::tokenize(input);
  if (tokens.empty()) throw InvalidInput("cannot embed empty text");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(kFakeEmbeddingDim);
  const auto bump = [&v](const std::string& feature) {
    v[static_cast<Eigen::Index>(text::fnv1a64(feature, kFakeEmbeddingSeed) % kFakeEmbeddingDim)] += 1.0;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    bump("u:" + tokens[i]);
    if (i + 1 < tokens.size()) bump("b:" + tokens[i] + " " + tokens[i + 1]);
  }
  v.normalize();
  return v;
}

Eigen::VectorXd fake_embed(const FixtureImage& image) {
  std::string content;
  for (const auto& t : image.declared_tags) {
    content += t.label;
    content += ' ';
  }
  content += image.declared_caption;
  return fake_embed(content);
}

// ---------------------------------------------------------------------------
// NLI

namespace {

bool is_negation(const std::string& tok) {
  static const std::unordered_set<std::string> markers = {
      "not", "no", "never", "nothing", "nobody", "none", "neither", "nor", "cannot", "without"};
  return markers.contains(tok) || (tok.size() > 3 && tok.ends_with("n't"));
}

}  // namespace

NliProbs fake_nli(std::string_view premise, std::string_view hypothesis, const Lexicon& antonyms) {
  const auto p_tokens = text::tokenize(premise);
  const auto h_tokens = text::tokenize(hypothesis);

  std::map<std::string, long> neg_p, neg_h;
  for (const auto& t : p_tokens) if (is_negation(t)) ++neg_p[t];
  for (const auto& t : h_tokens) if (is_negation(t)) ++neg_h[t];
  long negations = 0;
  for (const auto& [marker, count] : neg_h) {
    const auto it = neg_p.find(marker);
    negations += std::max(0L, count - (it == neg_p.end() ? 0L : it->second));
  }

  const std::set<std::string> p_set(p_tokens.begin(), p_tokens.end());
  const std::set<std::string> h_set(h_tokens.begin(), h_tokens.end());
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& p : p_set) {
    if (h_set.contains(p)) continue;
    const auto p_ants = antonyms.antonyms_any(p);
    for (const auto& h : h_set) {
      if (p_set.contains(h)) continue;
      const bool linked = std::find(p_ants.begin(), p_ants.end(), h) != p_ants.end() || [&] {
        const auto h_ants = antonyms.antonyms_any(h);
        return std::find(h_ants.begin(), h_ants.end(), p) != h_ants.end();
      }();
      if (linked) pairs.emplace(std::min(p, h), std::max(p, h));
    }
  }

  NliProbs out;
  out.contradict = std::min(1.0, 0.2 * static_cast<double>(negations) +
                                     0.6 * static_cast<double>(pairs.size()));
  std::size_t shared = 0;
  for (const auto& t : p_set) shared += h_set.contains(t) ? 1 : 0;
  const std::size_t uni = p_set.size() + h_set.size() - shared;
  const double jaccard = uni == 0 ? 1.0 : static_cast<double>(shared) / static_cast<double>(uni);
  out.entail = jaccard * (1.0 - out.contradict);
  out.neutral = std::max(0.0, 1.0 - out.contradict - out.entail);
  return out;
}

// ---------------------------------------------------------------------------
// Generation

std::string fake_generate(const std::vector<std::string>& keywords, std::string_view model_id) {
  if (keywords.empty()) throw InvalidInput("generate needs at least one keyword");
  const auto& roster = default_generator_models();
  const auto pos = std::find(roster.begin(), roster.end(), model_id);
  const std::size_t variant = pos != roster.end()
                                  ? static_cast<std::size_t>(pos - roster.begin())
                                  : text::fnv1a64(model_id) % roster.size();
  const auto tail = [&](std::size_t from, std::string_view glue) {
    std::string s;
    for (std::size_t i = from; i < keywords.size(); ++i) {
      s += glue;
      s += keywords[i];
    }
    return s;
  };
  const auto& k = keywords;
  switch (variant) {
    case 0:
      if (k.size() == 1) return "the adults are convinced their " + k[0] + " will turn out just fine";
      return "the adults are convinced their " + k[0] + " will " + k[1] + " the tree" +
             tail(2, " with the ");
    case 1:
      return "what a wonderful day i can not wait to see the " + k[0] + tail(1, " and the ") + " again";
    case 2:
      return "of course nothing could go wrong with the " + k[0] + tail(1, " and the ");
    default:
      if (k.size() == 1) return "i just love how the " + k[0] + " always works out";
      return "i just love how the " + k[0] + " always ends with " + k[1] + tail(2, " and ");
  }
}

// ---------------------------------------------------------------------------
// Bigram LM

namespace {

constexpr std::string_view kBos = "<s>";
constexpr std::string_view kEos = "</s>";
constexpr std::string_view kUnk = "<unk>";

std::string bigram_key(std::string_view prev, std::string_view word) {
  std::string key(prev);
  key.push_back('\x1f');
  key.append(word);
  return key;
}

}  // namespace

BigramLm::BigramLm(const std::vector<std::string>& sentences) {
  for (const auto& s : sentences) {
    for (const auto& t : text::tokenize(s)) known_.insert(t);
  }
  vocab_size_ = known_.size() + 2;  // + </s>, <unk>
  for (const auto& s : sentences) {
    const auto tokens = text::tokenize(s);
    if (tokens.empty()) continue;
    std::string prev(kBos);
    for (const auto& t : tokens) {
      ++context_counts_[prev];
      ++bigram_counts_[bigram_key(prev, t)];
      prev = t;
    }
    ++context_counts_[prev];
    ++bigram_counts_[bigram_key(prev, kEos)];
  }
}

BigramLm BigramLm::load(const std::filesystem::path& corpus) {
  std::ifstream in(corpus);
  if (!in) throw IoError("cannot open corpus " + corpus.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    lines.emplace_back(t);
  }
  return BigramLm(lines);
}

PplResult BigramLm::score(std::string_view input) const {
  auto tokens = text::tokenize(input);
  for (auto& t : tokens) {
    if (!known_.contains(t)) t = std::string(kUnk);
  }
  tokens.emplace_back(kEos);
  const double v = static_cast<double>(vocab_size_ == 0 ? 2 : vocab_size_);
  double nll = 0.0;
  std::string prev(kBos);
  for (const auto& t : tokens) {
    const auto ctx = context_counts_.find(prev);
    const auto big = bigram_counts_.find(bigram_key(prev, t));
    const double c_ctx = ctx == context_counts_.end() ? 0.0 : static_cast<double>(ctx->second);
    const double c_big = big == bigram_counts_.end() ? 0.0 : static_cast<double>(big->second);
    nll -= std::log((c_big + 1.0) / (c_ctx + v));
    prev = t;
  }
  return {nll / static_cast<double>(tokens.size()), static_cast<long>(tokens.size())};
}

// ---------------------------------------------------------------------------
// Service dispatch

namespace {

class RequestError : public std::runtime_error {
 public:
  RequestError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }

 private:
  int status_;
  std::string code_;
};

[[noreturn]] void bad_request(const std::string& message) {
  throw RequestError(400, "bad_request", message);
}

std::string require_text(const json& req, const char* field) {
  const auto it = req.find(field);
  if (it == req.end() || !it->is_string()) bad_request(std::string("'") + field + "' must be a string");
  auto s = it->get<std::string>();
  if (text::tokenize(s).empty()) bad_request(std::string("'") + field + "' has no tokens");
  return s;
}

std::vector<std::string> require_keywords(const json& req) {
  const auto it = req.find("keywords");
  if (it == req.end() || !it->is_array() || it->empty()) bad_request("'keywords' must be a non-empty array");
  std::vector<std::string> out;
  for (const auto& k : *it) {
    if (!k.is_string()) bad_request("keywords must be strings");
    auto norm = text::normalize(k.get<std::string>());
    if (norm.empty()) bad_request("empty keyword");
    out.push_back(std::move(norm));
  }
  return out;
}

json vector_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return json{{"vector", arr}, {"dim", v.size()}};
}

std::optional<Service> service_for_path(std::string_view path) {
  const auto slash = path.rfind('/');
  const auto name = slash == std::string_view::npos ? path : path.substr(slash + 1);
  return parse_service(name);
}

}  // namespace

FakeBackend::FakeBackend(std::vector<FixtureImage> fixtures, Lexicon antonyms, BigramLm lm)
    : fixtures_(std::move(fixtures)), antonyms_(std::move(antonyms)), lm_(std::move(lm)) {
  for (std::size_t i = 0; i < fixtures_.size(); ++i) {
    if (!by_id_.emplace(fixtures_[i].image_id, i).second) {
      throw InvalidInput("duplicate fixture image_id " + fixtures_[i].image_id);
    }
  }
}

std::shared_ptr<const FakeBackend> FakeBackend::load(const FakeOptions& options) {
  return std::make_shared<const FakeBackend>(
      load_fixture_dir(options.fixtures_dir),
      Lexicon({}, parse_antonym_table(options.antonyms_path)),
      BigramLm::load(options.corpus_path));
}

const FixtureImage* FakeBackend::find(std::string_view image_id) const {
  const auto it = by_id_.find(image_id);
  return it == by_id_.end() ? nullptr : &fixtures_[it->second];
}

std::vector<WireConsequence> FakeBackend::consequences(const std::vector<std::string>& keywords) const {
  const std::set<std::string> have(keywords.begin(), keywords.end());
  std::map<std::string, double> best;
  for (const auto& f : fixtures_) {
    for (const auto& rule : f.consequence_map) {
      const bool match = !rule.keywords.empty() &&
                         std::all_of(rule.keywords.begin(), rule.keywords.end(),
                                     [&](const std::string& k) { return have.contains(k); });
      if (!match) continue;
      for (const auto& p : rule.phrases) {
        auto [it, inserted] = best.emplace(p.phrase, p.score);
        if (!inserted) it->second = std::max(it->second, p.score);
      }
    }
  }
  std::vector<WireConsequence> out;
  for (const auto& [phrase, score] : best) out.push_back({phrase, score});
  std::stable_sort(out.begin(), out.end(),
                   [](const WireConsequence& a, const WireConsequence& b) { return a.score > b.score; });
  return out;
}

FixtureImage FakeBackend::resolve_image(const json& req) const {
  if (const auto it = req.find("image_b64"); it != req.end() && it->is_string()) {
    std::string payload;
    try {
      payload = base64_decode(it->get<std::string>());
    } catch (const InvalidInput& e) {
      bad_request(e.what());
    }
    auto parsed = json::parse(payload, nullptr, false);
    if (!parsed.is_discarded() && parsed.is_object()) {
      try {
        return parsed.get<FixtureImage>();
      } catch (const std::exception& e) {
        throw RequestError(422, "bad_fixture", e.what());
      }
    }
  }
  if (const auto it = req.find("image_id"); it != req.end() && it->is_string()) {
    if (const auto* f = find(it->get<std::string>())) return *f;
    throw RequestError(404, "unknown_image", "no fixture for image '" + it->get<std::string>() + "'");
  }
  bad_request("request names no image");
}

json FakeBackend::serve(Service service, const json& req) const {
  switch (service) {
    case Service::tags: {
      const auto img = resolve_image(req);
      json tags = json::array();
      for (const auto& t : img.declared_tags) tags.push_back({{"label", t.label}, {"confidence", t.confidence}});
      return json{{"tags", tags}};
    }
    case Service::caption: {
      const auto img = resolve_image(req);
      return json{{"caption", img.declared_caption}, {"sentiment", img.declared_sentiment}};
    }
    case Service::consequence: {
      json out = json::array();
      for (const auto& c : consequences(require_keywords(req))) {
        out.push_back({{"phrase", c.phrase}, {"score", c.score}});
      }
      return json{{"consequences", out}};
    }
    case Service::generate: {
      const auto keywords = require_keywords(req);
      const auto it = req.find("model_id");
      if (it == req.end() || !it->is_string()) bad_request("'model_id' must be a string");
      return json{{"text", fake_generate(keywords, it->get<std::string>())}};
    }
    case Service::embed: {
      if (req.contains("text")) return vector_json(fake_embed(require_text(req, "text")));
      return vector_json(fake_embed(resolve_image(req)));
    }
    case Service::nli: {
      const auto p = fake_nli(require_text(req, "premise"), require_text(req, "hypothesis"), antonyms_);
      return json{{"entail", p.entail}, {"neutral", p.neutral}, {"contradict", p.contradict}};
    }
    case Service::ppl: {
      const auto r = lm_.score(require_text(req, "text"));
      return json{{"mean_nll", r.mean_nll}, {"token_count", r.token_count}};
    }
  }
  bad_request("unhandled service");
}

WireResponse FakeBackend::handle(std::string_view path, std::string_view body) const {
  const auto error = [](int status, const std::string& code, const std::string& message) {
    return WireResponse{status, json{{"error", {{"code", code}, {"message", message}}}}.dump()};
  };
  const auto service = service_for_path(path);
  if (!service) return error(404, "not_found", "no service at " + std::string(path));
  auto req = json::parse(body, nullptr, false);
  if (req.is_discarded() || !req.is_object()) return error(400, "bad_request", "body is not a JSON object");
  try {
    return {200, serve(*service, req).dump()};
  } catch (const RequestError& e) {
    return error(e.status(), e.code(), e.what());
  } catch (const std::exception& e) {
    return error(400, "bad_request", e.what());
  }
}

WireResponse FakeTransport::post(const std::string& path, const std::string& body,
                                 std::chrono::milliseconds) {
  return backend_->handle(path, body);
}

// ---------------------------------------------------------------------------
// HTTP server

struct FakeServer::Impl {
  std::shared_ptr<const FakeBackend> backend;
  httplib::Server server;
  std::thread thread;
  std::string host;
  int port = 0;
};

FakeServer::FakeServer(std::shared_ptr<const FakeBackend> backend) : impl_(std::make_unique<Impl>()) {
  impl_->backend = std::move(backend);
  impl_->server.Post(R"(/v1/([a-z]+))", [this](const httplib::Request& req, httplib::Response& res) {
    const auto r = impl_->backend->handle(req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });
}

FakeServer::~FakeServer() { stop(); }

int FakeServer::start(const std::string& host, int port) {
  impl_->host = host;
  impl_->port = port == 0 ? impl_->server.bind_to_any_port(host) : port;
  if (port != 0 && !impl_->server.bind_to_port(host, port)) impl_->port = -1;
  if (impl_->port < 0) throw IoError("cannot bind fake server to " + host);
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

bool FakeServer::listen(const std::string& host, int port) {
  impl_->host = host;
  impl_->port = port;
  return impl_->server.listen(host, port);
}

void FakeServer::stop() {
  if (impl_ == nullptr) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string FakeServer::url() const {
  return "http://" + impl_->host + ":" + std::to_string(impl_->port);
}

}  // namespace cmsg

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

#include "cmsg/backends.hpp"

#include <cmath>
#include <thread>

#include <boost/beast/core/detail/base64.hpp>

#include "httplib.h"

namespace cmsg {

namespace {

namespace b64 = boost::beast::detail::base64;

constexpr double kProbabilitySumSlack = 1e-3;

[[noreturn]] void schema_error(Service s, const std::string& what) {
  throw ProtocolError(std::string(service_name(s)) + " response: " + what);
}

const json& require(Service s, const json& obj, const char* field) {
  const auto it = obj.find(field);
  if (it == obj.end()) schema_error(s, std::string("missing field '") + field + "'");
  return *it;
}

double require_number(Service s, const json& obj, const char* field) {
  const auto& v = require(s, obj, field);
  if (!v.is_number()) schema_error(s, std::string("field '") + field + "' is not a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_error(s, std::string("field '") + field + "' is not finite");
  return d;
}

const std::string& require_string(Service s, const json& obj, const char* field,
                                  bool non_empty = true) {
  const auto& v = require(s, obj, field);
  if (!v.is_string()) schema_error(s, std::string("field '") + field + "' is not a string");
  const auto& str = v.get_ref<const std::string&>();
  if (non_empty && str.empty()) schema_error(s, std::string("field '") + field + "' is empty");
  return str;
}

double require_probability(Service s, const json& obj, const char* field) {
  const double p = require_number(s, obj, field);
  if (p < 0.0 || p > 1.0) schema_error(s, std::string("field '") + field + "' outside [0,1]");
  return p;
}

bool is_sentiment_label(std::string_view s) {
  return s == "positive" || s == "negative" || s == "neutral" || s == "unknown";
}

std::string describe_error_body(const WireResponse& r) {
  auto parsed = json::parse(r.body, nullptr, false);
  if (!parsed.is_discarded() && parsed.is_object() && parsed.contains("error") &&
      parsed["error"].is_object()) {
    const auto& e = parsed["error"];
    return e.value("code", std::string("unknown")) + ": " +
           e.value("message", std::string());
  }
  return "HTTP " + std::to_string(r.status);
}

}  // namespace

std::string_view service_name(Service s) {
  switch (s) {
    case Service::tags: return "tags";
    case Service::caption: return "caption";
    case Service::consequence: return "consequence";
    case Service::generate: return "generate";
    case Service::embed: return "embed";
    case Service::nli: return "nli";
    case Service::ppl: return "ppl";
  }
  return "unknown";
}

std::optional<Service> parse_service(std::string_view name) {
  for (const auto s : kAllServices) {
    if (service_name(s) == name) return s;
  }
  return std::nullopt;
}

std::string default_path(Service s) { return "/v1/" + std::string(service_name(s)); }

std::string BackendEndpointConfig::path_for(Service s) const {
  const auto it = path_overrides.find(std::string(service_name(s)));
  return it == path_overrides.end() ? default_path(s) : it->second;
}

void BackendEndpointConfig::validate() const {
  if (timeout_ms <= 0) throw InvalidInput("backend timeout must be > 0");
  if (retries < 0) throw InvalidInput("backend retries must be >= 0");
  if (backoff_ms < 0) throw InvalidInput("backend backoff must be >= 0");
  if (base_url.empty()) throw InvalidInput("backend base_url is empty");
  for (const auto& [name, path] : path_overrides) {
    if (!parse_service(name)) throw InvalidInput("unknown service in path overrides: " + name);
  }
}

void to_json(json& j, const BackendEndpointConfig& c) {
  j = json{{"base_url", c.base_url},
           {"timeout_ms", c.timeout_ms},
           {"retries", c.retries},
           {"backoff_ms", c.backoff_ms},
           {"paths", c.path_overrides}};
}

void from_json(const json& j, BackendEndpointConfig& c) {
  c.base_url = j.value("base_url", c.base_url);
  c.timeout_ms = j.value("timeout_ms", c.timeout_ms);
  c.retries = j.value("retries", c.retries);
  c.backoff_ms = j.value("backoff_ms", c.backoff_ms);
  if (j.contains("paths")) c.path_overrides = j.at("paths").get<std::map<std::string, std::string>>();
}

HttpTransport::HttpTransport(std::string base_url) : base_url_(std::move(base_url)) {}

WireResponse HttpTransport::post(const std::string& path, const std::string& body,
                                 std::chrono::milliseconds timeout) {
  httplib::Client client(base_url_);
  if (!client.is_valid()) throw TransportFailure("invalid backend url " + base_url_);
  const auto secs = timeout.count() / 1000;
  const auto usecs = (timeout.count() % 1000) * 1000;
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  auto res = client.Post(path, body, "application/json");
  if (!res) {
    throw TransportFailure("POST " + base_url_ + path + " failed: " +
                           httplib::to_string(res.error()));
  }
  return {res->status, res->body};
}

void validate_response(Service service, const json& r) {
  if (!r.is_object()) schema_error(service, "body is not a JSON object");
  switch (service) {
    case Service::tags: {
      const auto& tags = require(service, r, "tags");
      if (!tags.is_array()) schema_error(service, "'tags' is not an array");
      for (const auto& t : tags) {
        if (!t.is_object()) schema_error(service, "tag entry is not an object");
        require_string(service, t, "label");
        require_probability(service, t, "confidence");
      }
      break;
    }
    case Service::caption: {
      require_string(service, r, "caption");
      const auto& s = require_string(service, r, "sentiment");
      if (!is_sentiment_label(s)) schema_error(service, "unknown sentiment '" + s + "'");
      break;
    }
    case Service::consequence: {
      const auto& cs = require(service, r, "consequences");
      if (!cs.is_array()) schema_error(service, "'consequences' is not an array");
      for (const auto& c : cs) {
        if (!c.is_object()) schema_error(service, "consequence entry is not an object");
        require_string(service, c, "phrase");
        require_number(service, c, "score");
      }
      break;
    }
    case Service::generate:
      require_string(service, r, "text", false);
      break;
    case Service::embed: {
      const auto& v = require(service, r, "vector");
      if (!v.is_array() || v.size() < 2) schema_error(service, "'vector' needs >= 2 entries");
      for (const auto& x : v) {
        if (!x.is_number() || !std::isfinite(x.get<double>())) {
          schema_error(service, "'vector' holds a non-finite entry");
        }
      }
      const auto& dim = require(service, r, "dim");
      if (!dim.is_number_integer() || dim.get<long>() != static_cast<long>(v.size())) {
        schema_error(service, "'dim' does not match the vector length");
      }
      break;
    }
    case Service::nli: {
      const double sum = require_probability(service, r, "entail") +
                         require_probability(service, r, "neutral") +
                         require_probability(service, r, "contradict");
      if (std::abs(sum - 1.0) > kProbabilitySumSlack) {
        schema_error(service, "probabilities sum to " + std::to_string(sum));
      }
      break;
    }
    case Service::ppl: {
      if (require_number(service, r, "mean_nll") < 0.0) schema_error(service, "negative mean_nll");
      const auto& n = require(service, r, "token_count");
      if (!n.is_number_integer() || n.get<long>() < 1) {
        schema_error(service, "'token_count' must be an integer >= 1");
      }
      break;
    }
  }
}

BackendClient::BackendClient(BackendEndpointConfig endpoint,
                             std::shared_ptr<Transport> transport)
    : default_route_{std::move(endpoint), std::move(transport)} {
  default_route_.endpoint.validate();
}

void BackendClient::set_route(Service service, BackendEndpointConfig endpoint,
                              std::shared_ptr<Transport> transport) {
  endpoint.validate();
  routes_[service] = Route{std::move(endpoint), std::move(transport)};
}

const BackendClient::Route& BackendClient::route(Service s) const {
  const auto it = routes_.find(s);
  return it == routes_.end() ? default_route_ : it->second;
}

json BackendClient::call(Service service, const json& request) const {
  const auto& r = route(service);
  const auto path = r.endpoint.path_for(service);
  const auto body = request.dump();
  const auto timeout = std::chrono::milliseconds(r.endpoint.timeout_ms);
  const int max_attempts = r.endpoint.retries + 1;

  std::string last_failure;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    if (attempt > 1) {
      const auto wait = static_cast<long>(r.endpoint.backoff_ms) << (attempt - 2);
      std::this_thread::sleep_for(std::chrono::milliseconds(wait));
    }
    WireResponse resp;
    try {
      resp = r.transport->post(path, body, timeout);
    } catch (const TransportFailure& e) {
      last_failure = e.what();
      continue;
    }
    if (resp.status >= 500) {
      last_failure = path + " -> " + describe_error_body(resp);
      continue;
    }
    if (resp.status < 200 || resp.status >= 300) {
      throw BackendError(path + " -> " + describe_error_body(resp), attempt);
    }
    auto parsed = json::parse(resp.body, nullptr, false);
    if (parsed.is_discarded()) schema_error(service, "body is not valid JSON");
    validate_response(service, parsed);
    return parsed;
  }
  throw BackendError(std::string(service_name(service)) + " failed after " +
                         std::to_string(max_attempts) + " attempts: " + last_failure,
                     max_attempts);
}

json image_request(const ImageRecord& image) {
  json j{{"image_id", image.image_id}};
  if (image.bytes) j["image_b64"] = base64_encode(*image.bytes);
  return j;
}

std::vector<WireTag> BackendClient::tags(const ImageRecord& image) const {
  const auto r = call(Service::tags, image_request(image));
  std::vector<WireTag> out;
  for (const auto& t : r.at("tags")) {
    out.push_back({t.at("label").get<std::string>(), t.at("confidence").get<double>()});
  }
  return out;
}

WireCaption BackendClient::caption(const ImageRecord& image, std::string_view sentiment) const {
  auto req = image_request(image);
  req["sentiment"] = sentiment;
  const auto r = call(Service::caption, req);
  return {r.at("caption").get<std::string>(), r.at("sentiment").get<std::string>()};
}

std::vector<WireConsequence> BackendClient::consequences(
    const std::vector<std::string>& keywords, std::string_view relation) const {
  const auto r = call(Service::consequence, json{{"keywords", keywords}, {"relation", relation}});
  std::vector<WireConsequence> out;
  for (const auto& c : r.at("consequences")) {
    out.push_back({c.at("phrase").get<std::string>(), c.at("score").get<double>()});
  }
  return out;
}

std::string BackendClient::generate(const std::vector<std::string>& keywords,
                                    std::string_view model_id) const {
  const auto r = call(Service::generate, json{{"keywords", keywords}, {"model_id", model_id}});
  return r.at("text").get<std::string>();
}

namespace {

Eigen::VectorXd to_vector(const json& r) {
  const auto& v = r.at("vector");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  return out;
}

}  // namespace

Eigen::VectorXd BackendClient::embed_text(std::string_view text) const {
  return to_vector(call(Service::embed, json{{"text", text}}));
}

Eigen::VectorXd BackendClient::embed_image(const ImageRecord& image) const {
  return to_vector(call(Service::embed, image_request(image)));
}

NliProbs BackendClient::nli(std::string_view premise, std::string_view hypothesis) const {
  const auto r = call(Service::nli, json{{"premise", premise}, {"hypothesis", hypothesis}});
  return {r.at("entail").get<double>(), r.at("neutral").get<double>(),
          r.at("contradict").get<double>()};
}

PplResult BackendClient::ppl(std::string_view text) const {
  const auto r = call(Service::ppl, json{{"text", text}});
  return {r.at("mean_nll").get<double>(), r.at("token_count").get<long>()};
}

std::string base64_encode(std::string_view bytes) {
  std::string out(b64::encoded_size(bytes.size()), '\0');
  out.resize(b64::encode(out.data(), bytes.data(), bytes.size()));
  return out;
}

std::string base64_decode(std::string_view encoded) {
  if (encoded.size() % 4 != 0) throw InvalidInput("base64 length is not a multiple of 4");
  std::string out(b64::decoded_size(encoded.size()), '\0');
  const auto [written, read] = b64::decode(out.data(), encoded.data(), encoded.size());
  std::size_t padding = 0;
  while (padding < 2 && padding < encoded.size() &&
         encoded[encoded.size() - 1 - padding] == '=') {
    ++padding;
  }
  if (read + padding != encoded.size()) throw InvalidInput("malformed base64 payload");
  out.resize(written);
  return out;
}

}  // namespace cmsg

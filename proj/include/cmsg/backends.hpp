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

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include "json.hpp"

#include "cmsg/errors.hpp"
#include "cmsg/image.hpp"

namespace cmsg {

using json = nlohmann::json;

enum class Service { tags, caption, consequence, generate, embed, nli, ppl };

inline constexpr Service kAllServices[] = {
    Service::tags,  Service::caption, Service::consequence, Service::generate,
    Service::embed, Service::nli,     Service::ppl};

std::string_view service_name(Service s);
std::optional<Service> parse_service(std::string_view name);
/// "/v1/<name>"
std::string default_path(Service s);

struct BackendEndpointConfig {
  /// "http://host:port" or the literal "fake:".
  std::string base_url = "fake:";
  int timeout_ms = 30000;
  int retries = 2;
  /// First retry waits this long; each further retry doubles it.
  int backoff_ms = 50;
  std::map<std::string, std::string> path_overrides;

  bool is_fake() const { return base_url == "fake:" || base_url == "fake"; }
  std::string path_for(Service s) const;
  /// Throws InvalidInput on timeout <= 0, retries < 0, backoff < 0.
  void validate() const;

  bool operator==(const BackendEndpointConfig&) const = default;
};

void to_json(json& j, const BackendEndpointConfig& c);
void from_json(const json& j, BackendEndpointConfig& c);

struct WireResponse {
  int status = 200;
  std::string body;
};

/// A failure to reach the service at all. Retried by the client.
class TransportFailure : public BackendError {
 public:
  using BackendError::BackendError;
};

class Transport {
 public:
  virtual ~Transport() = default;
  /// POSTs a JSON body. Throws TransportFailure when no response arrives.
  virtual WireResponse post(const std::string& path, const std::string& body,
                            std::chrono::milliseconds timeout) = 0;
};

class HttpTransport final : public Transport {
 public:
  explicit HttpTransport(std::string base_url);
  WireResponse post(const std::string& path, const std::string& body,
                    std::chrono::milliseconds timeout) override;

 private:
  std::string base_url_;
};

// Typed views of validated responses.

struct WireTag {
  std::string label;
  double confidence = 0.0;
};

struct WireCaption {
  std::string caption;
  std::string sentiment;
};

struct WireConsequence {
  std::string phrase;
  double score = 0.0;
};

struct NliProbs {
  double entail = 0.0;
  double neutral = 0.0;
  double contradict = 0.0;
};

struct PplResult {
  double mean_nll = 0.0;
  long token_count = 0;
};

/// Throws ProtocolError when `response` does not satisfy the schema of
/// `service`. Unknown fields are ignored.
void validate_response(Service service, const json& response);

/// Client for the seven model services, with per-service endpoints.
///
/// Transport failures and 5xx replies are retried up to `retries` times with
/// exponential backoff; 4xx replies and schema violations are not.
class BackendClient {
 public:
  BackendClient(BackendEndpointConfig endpoint, std::shared_ptr<Transport> transport);

  /// Routes `service` to its own endpoint and transport.
  void set_route(Service service, BackendEndpointConfig endpoint,
                 std::shared_ptr<Transport> transport);

  json call(Service service, const json& request) const;

  std::vector<WireTag> tags(const ImageRecord& image) const;
  WireCaption caption(const ImageRecord& image, std::string_view sentiment) const;
  std::vector<WireConsequence> consequences(const std::vector<std::string>& keywords,
                                            std::string_view relation = "causes") const;
  std::string generate(const std::vector<std::string>& keywords,
                       std::string_view model_id) const;
  Eigen::VectorXd embed_text(std::string_view text) const;
  Eigen::VectorXd embed_image(const ImageRecord& image) const;
  NliProbs nli(std::string_view premise, std::string_view hypothesis) const;
  PplResult ppl(std::string_view text) const;

 private:
  struct Route {
    BackendEndpointConfig endpoint;
    std::shared_ptr<Transport> transport;
  };
  const Route& route(Service s) const;

  Route default_route_;
  std::map<Service, Route> routes_;
};

/// JSON fragment identifying an image: image_id plus image_b64 when the
/// record carries bytes.
json image_request(const ImageRecord& image);

std::string base64_encode(std::string_view bytes);
/// Throws InvalidInput on malformed input.
std::string base64_decode(std::string_view encoded);

}  // namespace cmsg

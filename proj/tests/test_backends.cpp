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

#include <atomic>
#include <chrono>
#include <thread>
#include <set>

#include "doctest.h"
#include "cmsg/backends.hpp"
#include "cmsg/errors.hpp"
#include "cmsg/fake_backend.hpp"
#include "cmsg/text.hpp"
#include "test_support.hpp"

using namespace cmsg;
using cmsg::testing::fake_backend;
using cmsg::testing::fake_client;
using cmsg::testing::ok_json;
using cmsg::testing::stub_client;

namespace {

// Bucket set of the embedding features, hashed without the library helpers.
std::set<int> feature_buckets(const std::vector<std::string>& words) {
  auto hash = [](const std::string& s) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return static_cast<int>(h % 64);
  };
  std::set<int> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    out.insert(hash("u:" + words[i]));
    if (i + 1 < words.size()) out.insert(hash("b:" + words[i] + " " + words[i + 1]));
  }
  return out;
}

ImageRecord by_id(const std::string& id) { return {id, id, std::nullopt, std::nullopt, std::nullopt}; }

const WireResponse kUnavailable{503, R"({"error":{"code":"unavailable","message":"later"}})"};

}  // namespace

TEST_CASE("fake embedding is a deterministic 64-dim unit vector") {
  auto client = fake_client();
  auto a = client.embed_text("a good rainy day");
  auto b = client.embed_text("a good rainy day");
  CHECK(a.size() == 64);
  CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a == b);
  CHECK(a.dot(b) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(fake_embed("  "), InvalidInput);
}

TEST_CASE("disjoint vocabulary gives zero cosine") {
  const std::pair<const char*, const char*> pairs[] = {
      {"sunny beach", "broken oven"}, {"red kite", "old bicycle"}, {"happy puppy", "wet street"}};
  for (const auto& [x, y] : pairs) {
    const auto bx = feature_buckets(text::tokenize(x));
    const auto by = feature_buckets(text::tokenize(y));
    bool overlap = false;
    for (int k : bx) overlap |= by.contains(k);
    REQUIRE_FALSE(overlap);
    CHECK(fake_embed(x).dot(fake_embed(y)) == 0.0);
  }
}

TEST_CASE("fixture image is closest to its own caption") {
  const auto& fixtures = fake_backend()->fixtures();
  REQUIRE(fixtures.size() == 10);
  for (const auto& img : fixtures) {
    const auto v = fake_embed(img);
    const double own = v.dot(fake_embed(img.declared_caption));
    for (const auto& other : fixtures) {
      if (other.image_id == img.image_id) continue;
      CHECK_MESSAGE(own >= v.dot(fake_embed(other.declared_caption)),
                    img.image_id << " vs " << other.image_id);
    }
  }
}

TEST_CASE("fake nli") {
  const auto& ants = fake_backend()->antonyms();
  auto r = fake_nli("a good rainy day", "the rain ruined everything", ants);
  CHECK(r.contradict == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(r.entail == 0.0);
  CHECK(r.neutral == doctest::Approx(0.4).epsilon(1e-12));

  auto same = fake_nli("a good rainy day", "a good rainy day", ants);
  CHECK(same.contradict == 0.0);
  CHECK(same.entail == 1.0);

  auto neg = fake_nli("the dog is here", "the dog is not here and never was", ants);
  CHECK(neg.contradict == doctest::Approx(0.4).epsilon(1e-12));

  auto capped = fake_nli("good happy clean", "bad sad dirty not", ants);
  CHECK(capped.contradict == 1.0);

  for (const auto& [p, h] : std::vector<std::pair<std::string, std::string>>{
           {"a", "b"}, {"good dog", "bad dog"}, {"x y z", "x y"}, {"no", "no no no"}}) {
    auto q = fake_nli(p, h, ants);
    for (double v : {q.entail, q.neutral, q.contradict}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(std::abs(q.entail + q.neutral + q.contradict - 1.0) <= 1e-9);
  }
}

TEST_CASE("fake generator keeps keywords in order for every model") {
  const std::vector<std::vector<std::string>> sets = {
      {"dog"}, {"bananas", "fall down"}, {"crash", "person", "surfboard"}};
  for (const auto& model : default_generator_models()) {
    for (const auto& kws : sets) {
      const auto out = fake_generate(kws, model);
      std::size_t at = 0;
      for (const auto& k : kws) {
        const auto pos = out.find(k, at);
        REQUIRE(pos != std::string::npos);
        at = pos + k.size();
        CHECK(cmsg::testing::has_phrase(out, k));
      }
      CHECK(fake_generate(kws, model) == out);
    }
  }
  CHECK(fake_generate({"bananas", "fall down"}, "base-one-billion-word") ==
        "the adults are convinced their bananas will fall down the tree");
}

TEST_CASE("bigram lm bookkeeping") {
  BigramLm lm({"the cat sat", "the dog sat"});
  // known words: the cat sat dog, plus <unk> and </s>
  CHECK(lm.vocabulary_size() == 6);
  auto r = lm.score("the cat sat");
  CHECK(r.token_count == 4);
  // P(the|<s>)=3/8, P(cat|the)=2/8, P(sat|cat)=2/7, P(</s>|sat)=3/8
  const double expect = -(std::log(3.0 / 8) + std::log(2.0 / 8) + std::log(2.0 / 7) +
                          std::log(3.0 / 8)) / 4.0;
  CHECK(r.mean_nll == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("client retries transport failures then gives up") {
  BackendEndpointConfig e;
  e.base_url = "http://127.0.0.1:1";
  e.timeout_ms = 1;
  e.retries = 2;
  e.backoff_ms = 1;
  BackendClient client(e, std::make_shared<HttpTransport>(e.base_url));
  try {
    client.embed_text("x");
    FAIL("expected BackendError");
  } catch (const ProtocolError&) {
    FAIL("transport failure reported as protocol error");
  } catch (const BackendError& err) {
    CHECK(err.attempts() == 3);
  }
}

TEST_CASE("retry policy by response class") {
  auto make = [](int retries, cmsg::testing::StubTransport::Handler h) {
    auto t = std::make_shared<cmsg::testing::StubTransport>(std::move(h));
    auto e = cmsg::testing::quick_endpoint();
    e.retries = retries;
    return std::make_pair(BackendClient(e, t), t);
  };
  {
    auto [c, t] = make(3, [](const std::string&, const json&) { return kUnavailable; });
    CHECK_THROWS_AS(c.ppl("x"), BackendError);
    CHECK(t->calls == 4);
  }
  {
    int n = 0;
    auto [c, t] = make(3, [&n](const std::string&, const json&) {
      return ++n < 3 ? kUnavailable : ok_json({{"mean_nll", 1.0}, {"token_count", 2}});
    });
    CHECK(c.ppl("x").token_count == 2);
    CHECK(t->calls == 3);
  }
  {
    auto [c, t] = make(3, [](const std::string&, const json&) {
      return WireResponse{404, R"({"error":{"code":"unknown_image","message":"nope"}})"};
    });
    CHECK_THROWS_AS(c.tags(by_id("x")), BackendError);
    CHECK(t->calls == 1);
  }
  {
    auto [c, t] = make(3, [](const std::string&, const json&) { return ok_json({{"entail", 0.5}}); });
    CHECK_THROWS_AS(c.nli("a", "b"), ProtocolError);
    CHECK(t->calls == 1);
  }
  {
    auto [c, t] = make(3, [](const std::string&, const json&) { return WireResponse{200, "{not json"}; });
    CHECK_THROWS_AS(c.ppl("x"), ProtocolError);
    CHECK(t->calls == 1);
  }
}

TEST_CASE("schema validation") {
  CHECK_THROWS_AS(validate_response(Service::nli, {{"entail", 0.5}, {"neutral", 0.5}}), ProtocolError);
  CHECK_THROWS_AS(validate_response(Service::nli, {{"entail", 0.5}, {"neutral", 0.5}, {"contradict", 0.5}}),
                  ProtocolError);
  CHECK_NOTHROW(validate_response(Service::nli,
                                  {{"entail", 0.2}, {"neutral", 0.3}, {"contradict", 0.5}, {"extra", 1}}));
  CHECK_THROWS_AS(validate_response(Service::embed, {{"vector", {1.0, 0.0}}, {"dim", 3}}), ProtocolError);
  CHECK_THROWS_AS(validate_response(Service::ppl, {{"mean_nll", -1.0}, {"token_count", 2}}), ProtocolError);
  CHECK_THROWS_AS(validate_response(Service::ppl, {{"mean_nll", 1.0}, {"token_count", 0}}), ProtocolError);
  CHECK_THROWS_AS(validate_response(Service::caption, {{"caption", "x"}, {"sentiment", "angry"}}),
                  ProtocolError);
  CHECK_THROWS_AS(validate_response(Service::tags, {{"tags", {{{"label", "x"}}}}}), ProtocolError);
  CHECK_THROWS_AS(validate_response(Service::generate, json::array()), ProtocolError);
}

TEST_CASE("endpoint config") {
  BackendEndpointConfig e;
  CHECK(e.is_fake());
  CHECK(e.path_for(Service::nli) == "/v1/nli");
  e.path_overrides["nli"] = "/custom/nli";
  CHECK(e.path_for(Service::nli) == "/custom/nli");
  json j = e;
  CHECK(j.get<BackendEndpointConfig>() == e);
  e.timeout_ms = 0;
  CHECK_THROWS_AS(e.validate(), InvalidInput);
  e.timeout_ms = 1;
  e.retries = -1;
  CHECK_THROWS_AS(e.validate(), InvalidInput);
  for (auto s : kAllServices) CHECK(parse_service(service_name(s)) == s);
}

TEST_CASE("per-service routing") {
  auto [client, t] = stub_client([](const std::string&, const json&) { return kUnavailable; });
  client.set_route(Service::embed, cmsg::testing::quick_endpoint(),
                   std::make_shared<FakeTransport>(fake_backend()));
  CHECK(client.embed_text("dog").size() == 64);
  CHECK_THROWS_AS(client.ppl("dog"), BackendError);
}

TEST_CASE("base64 round trip") {
  const std::vector<std::string> samples = {"", "a", "ab", "abc", "abcd", std::string("\0\xff\x10 z", 5)};
  for (const auto& s : samples) {
    CHECK(base64_decode(base64_encode(s)) == s);
  }
  CHECK(base64_encode("hello") == "aGVsbG8=");
}

TEST_CASE("image bytes resolve through the fixture sidecar") {
  const auto path = cmsg::testing::data_dir() / "fixtures" / "images" / "surfer.json";
  const auto rec = resolve_image(path.string());
  CHECK(rec.image_id == "surfer");
  REQUIRE(rec.bytes.has_value());
  auto client = fake_client();
  auto from_bytes = client.tags(rec);
  auto from_id = client.tags(by_id("surfer"));
  REQUIRE(from_bytes.size() == from_id.size());
  for (std::size_t i = 0; i < from_id.size(); ++i) CHECK(from_bytes[i].label == from_id[i].label);
  CHECK(client.embed_image(rec) == client.embed_image(by_id("surfer")));
  CHECK_THROWS_AS(client.tags(by_id("no-such-image")), BackendError);
}

TEST_CASE("http conformance against the fake server") {
  FakeServer server(fake_backend());
  const int port = server.start();
  REQUIRE(port > 0);
  auto endpoint = cmsg::testing::quick_endpoint(server.url());
  BackendClient http(endpoint, std::make_shared<HttpTransport>(server.url()));
  auto local = fake_client();

  const json requests[] = {
      {{"image_id", "surfer"}},
      {{"image_id", "surfer"}, {"sentiment", "negative"}},
      {{"keywords", {"surfboard", "wave"}}, {"relation", "causes"}},
      {{"keywords", {"bananas", "fall down"}}, {"model_id", "large-yelp"}},
      {{"text", "a good rainy day"}},
      {{"premise", "a good rainy day"}, {"hypothesis", "the rain ruined everything"}},
      {{"text", "a man riding a wave"}},
  };
  std::size_t i = 0;
  for (auto s : kAllServices) {
    CAPTURE(service_name(s));
    const auto over_http = http.call(s, requests[i]);
    CHECK_NOTHROW(validate_response(s, over_http));
    CHECK(over_http == local.call(s, requests[i]));
    ++i;
  }
  CHECK(http.embed_image(by_id("rainy_city")) == local.embed_image(by_id("rainy_city")));

  // Error bodies survive the wire.
  auto status = fake_backend()->handle("/v1/tags", R"({"image_id":"missing"})");
  CHECK(status.status == 404);
  CHECK(json::parse(status.body).at("error").at("code") == "unknown_image");
  CHECK(fake_backend()->handle("/v1/tags", "{oops").status == 400);
  CHECK(fake_backend()->handle("/v1/nowhere", "{}").status == 404);
  CHECK_THROWS_AS(http.tags(by_id("missing")), BackendError);
  server.stop();
}

TEST_CASE("concurrent calls through one http client") {
  FakeServer server(fake_backend());
  server.start();
  BackendClient http(cmsg::testing::quick_endpoint(server.url()),
                     std::make_shared<HttpTransport>(server.url()));
  std::vector<std::jthread> threads;
  std::atomic<int> ok{0};
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int k = 0; k < 10; ++k) {
        if (http.embed_text("dog " + std::to_string(t * 10 + k)).size() == 64) ++ok;
      }
    });
  }
  threads.clear();
  CHECK(ok == 80);
  server.stop();
}

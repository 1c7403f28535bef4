#include <chrono>
#include <cstdlib>
#include <thread>

#include "doctest.h"
#include "json.hpp"
#include "stub_server.hpp"
#include "typotex/errors.hpp"
#include "typotex/png_codec.hpp"
#include "typotex/texture_provider.hpp"

using namespace typotex;

namespace {
const std::string kFixtures = TYPOTEX_FIXTURE_DIR;

std::string file_text(const std::string& path) {
  const auto bytes = read_file(path);
  return std::string(bytes.begin(), bytes.end());
}

ProviderConfig remote(const std::string& url, int timeout_ms = 5000) {
  ProviderConfig cfg;
  cfg.mode = ProviderMode::remote;
  cfg.endpoint = url;
  cfg.timeout = std::chrono::milliseconds(timeout_ms);
  cfg.auth_token_source = "TYPOTEX_TEST_TOKEN";
  return cfg;
}
}  // namespace

TEST_CASE("prompt template") {
  CHECK(build_prompt("TREE") == "Seamless repeating pattern of tiny and small TREE");
  CHECK(build_prompt("  snow  ") == "Seamless repeating pattern of tiny and small snow");
  CHECK(build_prompt("Sea Shells") == "Seamless repeating pattern of tiny and small Sea Shells");
  CHECK_THROWS_AS(build_prompt(""), EmptyConcept);
  CHECK_THROWS_AS(build_prompt(" \t\n"), EmptyConcept);
}

TEST_CASE("request carries the concept and template") {
  const TextureRequest r = TextureRequest::for_concept(" TREE ", 64, 32, 9);
  CHECK(r.concept_text == "TREE");
  CHECK(r.prompt == build_prompt("TREE"));
  CHECK(r.width == 64);
  CHECK(r.height == 32);
  CHECK(r.seed == 9);
}

TEST_CASE("config validation per mode") {
  ProviderConfig cfg;
  cfg.mode = ProviderMode::remote;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.mode = ProviderMode::file;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.mode = ProviderMode::procedural;
  CHECK_NOTHROW(cfg.validate());
  CHECK_THROWS_AS(parse_provider_mode("diffusion"), ConfigError);
  CHECK(parse_provider_mode("file") == ProviderMode::file);
}

TEST_CASE("procedural textures are deterministic and sized") {
  const TextureRequest r = TextureRequest::for_concept("TREE", 64, 64, 42);
  const Image a = fetch_texture(r, {});
  CHECK(a.width() == 64);
  CHECK(a.height() == 64);
  CHECK(a == fetch_texture(r, {}));
  const Image odd = fetch_texture(TextureRequest::for_concept("TREE", 37, 91, 1), {});
  CHECK(odd.width() == 37);
  CHECK(odd.height() == 91);
}

TEST_CASE("procedural textures wrap without seams") {
  // Neighbouring columns across the wrap differ no more than neighbours inside.
  for (std::uint64_t seed : {1u, 2u, 42u}) {
    const Image img = procedural_pattern(seed, 128, 96);
    auto step = [&](int x0, int y0, int x1, int y1) {
      int worst = 0;
      for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(img.pixel(x0, y0)[c] - img.pixel(x1, y1)[c]));
      return worst;
    };
    int inner = 0, seam = 0;
    for (int y = 0; y < 96; ++y) {
      for (int x = 0; x + 1 < 128; ++x) inner = std::max(inner, step(x, y, x + 1, y));
      seam = std::max(seam, step(127, y, 0, y));
    }
    for (int x = 0; x < 128; ++x) seam = std::max(seam, step(x, 95, x, 0));
    CHECK(seam <= inner);
  }
}

TEST_CASE("different seeds give different textures") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Image a = procedural_pattern(2 * s, 64, 64);
    const Image b = procedural_pattern(2 * s + 1, 64, 64);
    int differing = 0;
    for (int y = 0; y < 64; ++y) {
      for (int x = 0; x < 64; ++x) differing += !std::equal(a.pixel(x, y), a.pixel(x, y) + 3, b.pixel(x, y));
    }
    CHECK(differing >= 0.01 * 64 * 64);
  }
}

TEST_CASE("file provider passes the fixture through") {
  ProviderConfig cfg;
  cfg.mode = ProviderMode::file;
  cfg.file_path = kFixtures + "/texture128.png";
  const Image got = fetch_texture(TextureRequest::for_concept("x", 128, 128), cfg);
  CHECK(got == load_png(kFixtures + "/texture128.png"));
  const Image resized = fetch_texture(TextureRequest::for_concept("x", 50, 70), cfg);
  CHECK(resized.width() == 50);
  CHECK(resized.height() == 70);
}

TEST_CASE("file provider errors") {
  ProviderConfig cfg;
  cfg.mode = ProviderMode::file;
  cfg.file_path = kFixtures + "/missing.png";
  CHECK_THROWS_AS(fetch_texture(TextureRequest::for_concept("x", 8, 8), cfg), FileNotFound);
  cfg.file_path = kFixtures + "/svg_paths.json";
  CHECK_THROWS_AS(fetch_texture(TextureRequest::for_concept("x", 8, 8), cfg), DecodeError);
}

TEST_CASE("remote provider posts the request and conforms a 1x1 reply") {
  const std::string red = file_text(kFixtures + "/red1x1.png");
  nlohmann::json seen;
  std::string auth;
  StubServer stub("/generate", [&](const httplib::Request& req, httplib::Response& res) {
    seen = nlohmann::json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(red, "image/png");
  });
  ::setenv("TYPOTEX_TEST_TOKEN", "sekret", 1);
  const Image img = fetch_texture(TextureRequest::for_concept("TREE", 24, 16, 42), remote(stub.url("/generate")));
  ::unsetenv("TYPOTEX_TEST_TOKEN");
  CHECK(seen["prompt"] == "Seamless repeating pattern of tiny and small TREE");
  CHECK(seen["width"] == 24);
  CHECK(seen["height"] == 16);
  CHECK(seen["seed"] == 42);
  CHECK(auth == "Bearer sekret");
  REQUIRE(img.width() == 24);
  REQUIRE(img.height() == 16);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 24; ++x) {
      CHECK(img.pixel(x, y)[0] == 255);
      CHECK(img.pixel(x, y)[1] == 0);
      CHECK(img.pixel(x, y)[2] == 0);
    }
  }
}

TEST_CASE("remote provider omits seed and token when absent") {
  nlohmann::json seen;
  bool has_auth = true;
  const std::string red = file_text(kFixtures + "/red1x1.png");
  StubServer stub("/g", [&](const httplib::Request& req, httplib::Response& res) {
    seen = nlohmann::json::parse(req.body);
    has_auth = req.has_header("Authorization");
    res.set_content(red, "image/png");
  });
  fetch_texture(TextureRequest::for_concept("x", 4, 4), remote(stub.url("/g")));
  CHECK_FALSE(seen.contains("seed"));
  CHECK_FALSE(has_auth);
}

TEST_CASE("remote provider rejection keeps the body") {
  StubServer stub("/g", [](const httplib::Request&, httplib::Response& res) {
    res.status = 429;
    res.set_content("quota exhausted", "text/plain");
  });
  try {
    fetch_texture(TextureRequest::for_concept("x", 4, 4), remote(stub.url("/g")));
    FAIL("expected ProviderRejected");
  } catch (const ProviderRejected& e) {
    CHECK(e.status() == 429);
    CHECK(e.body() == "quota exhausted");
  }
}

TEST_CASE("remote provider gives up at the timeout") {
  StubServer stub("/slow", [](const httplib::Request&, httplib::Response& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(1500));
    res.set_content("late", "text/plain");
  });
  const auto start = std::chrono::steady_clock::now();
  CHECK_THROWS_AS(fetch_texture(TextureRequest::for_concept("x", 4, 4), remote(stub.url("/slow"), 300)),
                  ProviderTimeout);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::milliseconds(1200));
}

TEST_CASE("remote provider reports undecodable replies and dead endpoints") {
  StubServer stub("/g", [](const httplib::Request&, httplib::Response& res) { res.set_content("nope", "image/png"); });
  CHECK_THROWS_AS(fetch_texture(TextureRequest::for_concept("x", 4, 4), remote(stub.url("/g"))), DecodeError);
  CHECK_THROWS_AS(fetch_texture(TextureRequest::for_concept("x", 4, 4), remote("http://127.0.0.1:1/g")),
                  ServiceUnavailable);
}

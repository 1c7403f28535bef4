#include <fstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "stub_server.hpp"
#include "temp_dir.hpp"
#include "typotex/http_api.hpp"
#include "typotex/png_codec.hpp"

using namespace typotex;
using nlohmann::json;

namespace {

PipelineSettings settings() {
  PipelineSettings s;
  s.font_path = std::string(TYPOTEX_FIXTURE_DIR) + "/fonts/FixtureSans.ttf";
  s.raster_resolution = 256;
  s.texture_width = 128;
  s.texture_height = 128;
  return s;
}

class Service {
 public:
  Service(PipelineSettings s, const std::filesystem::path& dir, std::optional<std::filesystem::path> static_dir = {})
      : pipeline_(std::move(s), dir), api_(pipeline_, std::move(static_dir)) {
    port_ = api_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { api_.listen_after_bind(); });
    api_.wait_until_ready();
  }
  ~Service() {
    api_.stop();
    thread_.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }

 private:
  Pipeline pipeline_;
  HttpApi api_;
  int port_ = -1;
  std::thread thread_;
};

httplib::Result post(httplib::Client& c, const std::string& path, const json& body) {
  return c.Post(path, body.dump(), "application/json");
}

const json kCreate = {{"concept", "TREE"}, {"word", "NATURE"}, {"letter", "T"}, {"seed", 42}};

}  // namespace

TEST_CASE("health check") {
  TempDir dir;
  Service svc(settings(), dir.path());
  auto c = svc.client();
  const auto r = c.Get("/api/healthz");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(r->body == "ok");
}

TEST_CASE("create, fetch and adjust a session") {
  TempDir dir;
  Service svc(settings(), dir.path());
  auto c = svc.client();
  const auto created = post(c, "/api/sessions", kCreate);
  REQUIRE(created);
  REQUIRE(created->status == 201);
  const json body = json::parse(created->body);
  const std::string id = body["id"];
  CHECK(body["image_url"] == "/api/sessions/" + id + "/image.png");
  CHECK(body["scale"] == 0.5);
  CHECK(body["background"] == "#FFFFFF");

  const auto png = c.Get(body["image_url"].get<std::string>());
  REQUIRE(png);
  CHECK(png->status == 200);
  CHECK(png->get_header_value("Content-Type") == "image/png");
  const std::vector<std::uint8_t> first(png->body.begin(), png->body.end());
  const Image original = decode_png(first);

  const auto meta = c.Get("/api/sessions/" + id);
  REQUIRE(meta);
  CHECK(meta->status == 200);
  CHECK(json::parse(meta->body)["word"] == "NATURE");

  const auto adj = post(c, "/api/sessions/" + id + "/adjust", {{"background", "#000"}});
  REQUIRE(adj);
  CHECK(adj->status == 200);
  const json adj_body = json::parse(adj->body);
  CHECK(adj_body["background"] == "#000000");
  CHECK(adj_body["scale"] == 0.5);
  const auto dark = c.Get("/api/sessions/" + id + "/image.png");
  const Image darker = decode_png(std::vector<std::uint8_t>(dark->body.begin(), dark->body.end()));
  CHECK(darker.pixel(0, 0)[0] == 0);
  CHECK(original.pixel(0, 0)[0] == 255);

  post(c, "/api/sessions/" + id + "/adjust", {{"scale", 0.25}});
  post(c, "/api/sessions/" + id + "/adjust", {{"scale", 0.5}, {"background", "#FFFFFF"}});
  const auto back = c.Get("/api/sessions/" + id + "/image.png");
  CHECK(decode_png(std::vector<std::uint8_t>(back->body.begin(), back->body.end())) == original);
}

TEST_CASE("validation and lookup errors") {
  TempDir dir;
  Service svc(settings(), dir.path());
  auto c = svc.client();

  auto bad = post(c, "/api/sessions", {{"concept", "TREE"}, {"word", "NATURE"}, {"letter", "X"}});
  REQUIRE(bad);
  CHECK(bad->status == 422);
  CHECK(json::parse(bad->body)["field"] == "letter");
  bad = post(c, "/api/sessions", {{"concept", "TREE"}, {"word", "NATURE"}});
  CHECK(bad->status == 422);
  CHECK(json::parse(bad->body)["field"] == "letter");
  bad = c.Post("/api/sessions", "not json", "application/json");
  CHECK(bad->status == 400);

  const std::string missing = "0123456789abcdef0123456789abcdef";
  CHECK(c.Get("/api/sessions/" + missing)->status == 404);
  CHECK(c.Get("/api/sessions/" + missing + "/image.png")->status == 404);
  CHECK(post(c, "/api/sessions/" + missing + "/adjust", {{"scale", 0.5}})->status == 404);
  CHECK(c.Get("/api/sessions/..%2F..%2Fetc")->status == 404);

  const std::string id = json::parse(post(c, "/api/sessions", kCreate)->body)["id"];
  auto r = post(c, "/api/sessions/" + id + "/adjust", {{"scale", 1.5}});
  CHECK(r->status == 422);
  CHECK(json::parse(r->body)["field"] == "scale");
  r = post(c, "/api/sessions/" + id + "/adjust", {{"background", "white"}});
  CHECK(r->status == 422);
  CHECK(json::parse(r->body)["field"] == "background");
  r = post(c, "/api/sessions/" + id + "/adjust", {{"scale", "big"}});
  CHECK(r->status == 422);
}

TEST_CASE("generation failures report the session") {
  TempDir dir;
  StubServer slow("/g", [](const httplib::Request&, httplib::Response& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(1500));
    res.set_content("", "image/png");
  });
  StubServer broken("/g", [](const httplib::Request&, httplib::Response& res) {
    res.status = 500;
    res.set_content("down", "text/plain");
  });

  PipelineSettings s = settings();
  s.provider.mode = ProviderMode::remote;
  s.provider.endpoint = slow.url("/g");
  s.provider.timeout = std::chrono::milliseconds(300);
  {
    Service svc(s, dir.path());
    auto c = svc.client();
    const auto r = post(c, "/api/sessions", kCreate);
    REQUIRE(r);
    CHECK(r->status == 504);
    const std::string id = json::parse(r->body)["id"];
    const auto meta = c.Get("/api/sessions/" + id);
    CHECK(json::parse(meta->body)["state"] == "failed");
    CHECK(c.Get("/api/sessions/" + id + "/image.png")->status == 409);
    CHECK(post(c, "/api/sessions/" + id + "/adjust", {{"scale", 0.5}})->status == 409);
  }
  s.provider.endpoint = broken.url("/g");
  {
    Service svc(s, dir.path());
    auto c = svc.client();
    CHECK(post(c, "/api/sessions", kCreate)->status == 502);
  }
}

TEST_CASE("sessions survive a service restart") {
  TempDir dir;
  std::string id, before;
  {
    Service svc(settings(), dir.path());
    auto c = svc.client();
    id = json::parse(post(c, "/api/sessions", kCreate)->body)["id"];
    post(c, "/api/sessions/" + id + "/adjust", {{"scale", 0.3}, {"background", "#336699"}});
    before = c.Get("/api/sessions/" + id + "/image.png")->body;
  }
  Service svc(settings(), dir.path());
  auto c = svc.client();
  CHECK(c.Get("/api/sessions/" + id + "/image.png")->body == before);
  CHECK(json::parse(c.Get("/api/sessions/" + id)->body)["background"] == "#336699");
}

TEST_CASE("concurrent requests across sessions") {
  TempDir dir;
  Service svc(settings(), dir.path());
  std::vector<std::thread> threads;
  std::vector<int> statuses(6, 0);
  for (int i = 0; i < 6; ++i) {
    threads.emplace_back([&, i] {
      auto c = svc.client();
      json body = kCreate;
      body["seed"] = i;
      const auto r = post(c, "/api/sessions", body);
      if (!r) return;
      const std::string id = json::parse(r->body)["id"];
      const auto a = post(c, "/api/sessions/" + id + "/adjust", {{"scale", 0.25}});
      statuses[i] = a ? a->status : -1;
    });
  }
  for (auto& t : threads) t.join();
  for (int s : statuses) CHECK(s == 200);
}

TEST_CASE("static files are served at the root") {
  TempDir dir;
  const auto web = dir.path() / "web";
  std::filesystem::create_directories(web);
  std::ofstream(web / "index.html") << "<!doctype html><title>t</title>";
  Service svc(settings(), dir.path() / "sessions", web);
  auto c = svc.client();
  const auto r = c.Get("/index.html");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(r->body.find("<title>t</title>") != std::string::npos);
  CHECK(c.Get("/api/healthz")->body == "ok");
}

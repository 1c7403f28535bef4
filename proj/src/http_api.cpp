#include "typotex/http_api.hpp"

#include "httplib.h"
#include "json.hpp"

namespace typotex {
namespace {

using nlohmann::json;

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

std::string image_url(const std::string& id) { return "/api/sessions/" + id + "/image.png"; }

std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    send_error(res, 400, "request body must be a JSON object");
    return std::nullopt;
  }
  return body;
}

// Status for a generation that failed after the session was created.
int failure_status(const GenerationFailed& failure) {
  try {
    std::rethrow_if_nested(failure);
  } catch (const ProviderTimeout&) {
    return 504;
  } catch (const ReshapeTimeout&) {
    return 504;
  } catch (const LayoutError&) {
    return 422;
  } catch (...) {
    return 502;
  }
  return 500;
}

}  // namespace

struct HttpApi::Impl {
  Pipeline& pipeline;
  httplib::Server server;

  explicit Impl(Pipeline& p) : pipeline(p) {}

  void create(const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_body(req, res);
    if (!body) return;
    SessionInputs inputs;
    std::optional<std::int64_t> seed;
    for (auto [field, target] : {std::pair{"concept", &inputs.concept_text}, std::pair{"word", &inputs.word},
                                 std::pair{"letter", &inputs.letter}}) {
      const auto it = body->find(field);
      if (it == body->end() || !it->is_string()) {
        send_json(res, 422, {{"error", std::string(field) + ": must be a string"}, {"field", field}});
        return;
      }
      *target = it->get<std::string>();
    }
    if (const auto it = body->find("seed"); it != body->end() && !it->is_null()) {
      if (!it->is_number_integer()) {
        send_json(res, 422, {{"error", "seed: must be an integer"}, {"field", "seed"}});
        return;
      }
      seed = it->get<std::int64_t>();
    }

    try {
      const Session s = pipeline.generate(inputs, seed);
      send_json(res, 201,
                {{"id", s.id},
                 {"image_url", image_url(s.id)},
                 {"scale", s.scale.value()},
                 {"background", format_hex_color(s.background)}});
    } catch (const ValidationError& e) {
      send_json(res, 422, {{"error", e.what()}, {"field", e.field()}});
    } catch (const GenerationFailed& e) {
      send_json(res, failure_status(e), {{"error", e.what()}, {"id", e.session_id()}});
    }
  }

  void adjust(const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    const auto body = parse_body(req, res);
    if (!body) return;
    std::optional<double> scale;
    std::optional<BackgroundColor> background;
    try {
      if (const auto it = body->find("scale"); it != body->end() && !it->is_null()) {
        if (!it->is_number()) {
          send_json(res, 422, {{"error", "scale: must be a number"}, {"field", "scale"}});
          return;
        }
        scale = it->get<double>();
      }
      if (const auto it = body->find("background"); it != body->end() && !it->is_null()) {
        if (!it->is_string()) {
          send_json(res, 422, {{"error", "background: must be a string"}, {"field", "background"}});
          return;
        }
        background = parse_hex_color(it->get<std::string>());
      }
      pipeline.adjust(id, scale, background);
      const Session s = pipeline.get(id);
      send_json(res, 200,
                {{"image_url", image_url(id)},
                 {"scale", s.scale.value()},
                 {"background", format_hex_color(s.background)}});
    } catch (const InvalidColor& e) {
      send_json(res, 422, {{"error", e.what()}, {"field", "background"}});
    } catch (const InvalidScale& e) {
      send_json(res, 422, {{"error", e.what()}, {"field", "scale"}});
    } catch (const UnknownSession& e) {
      send_error(res, 404, e.what());
    } catch (const NotYetGenerated& e) {
      send_error(res, 409, e.what());
    }
  }

  void image(const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    try {
      const std::vector<std::uint8_t> png = pipeline.export_png(id);
      res.set_header("Cache-Control", "no-store");
      res.set_content(std::string(png.begin(), png.end()), "image/png");
    } catch (const UnknownSession& e) {
      send_error(res, 404, e.what());
    } catch (const NotYetGenerated& e) {
      send_error(res, 409, e.what());
    }
  }

  void metadata(const httplib::Request& req, httplib::Response& res) {
    try {
      send_json(res, 200, pipeline.metadata(req.matches[1]));
    } catch (const UnknownSession& e) {
      send_error(res, 404, e.what());
    }
  }
};

HttpApi::HttpApi(Pipeline& pipeline, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(pipeline)) {
  auto& server = impl_->server;
  Impl* impl = impl_.get();
  server.Post("/api/sessions", [impl](const auto& req, auto& res) { impl->create(req, res); });
  server.Post(R"(/api/sessions/([^/]+)/adjust)", [impl](const auto& req, auto& res) { impl->adjust(req, res); });
  server.Get(R"(/api/sessions/([^/]+)/image\.png)", [impl](const auto& req, auto& res) { impl->image(req, res); });
  server.Get(R"(/api/sessions/([^/]+))", [impl](const auto& req, auto& res) { impl->metadata(req, res); });
  server.Get("/api/healthz", [](const auto&, auto& res) { res.set_content("ok", "text/plain"); });
  server.set_exception_handler([](const auto&, auto& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      send_error(res, 500, e.what());
    } catch (...) {
      send_error(res, 500, "internal error");
    }
  });
  if (static_dir && !server.set_mount_point("/", static_dir->string())) {
    throw ConfigError("static directory '" + static_dir->string() + "' does not exist");
  }
}

HttpApi::~HttpApi() { stop(); }

bool HttpApi::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int HttpApi::bind_to_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool HttpApi::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpApi::wait_until_ready() const { impl_->server.wait_until_ready(); }

void HttpApi::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace typotex

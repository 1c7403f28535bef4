#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "typotex/pipeline.hpp"

namespace typotex {

/// JSON-over-HTTP front end for a Pipeline.
///
///   POST /api/sessions              {concept, word, letter, seed?}
///   POST /api/sessions/{id}/adjust  {scale?, background?}
///   GET  /api/sessions/{id}/image.png
///   GET  /api/sessions/{id}
///   GET  /api/healthz
///
/// When `static_dir` is set its files are served at /.
class HttpApi {
 public:
  HttpApi(Pipeline& pipeline, std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpApi();

  /// Binds and serves until stop(); returns false if binding fails.
  bool listen(const std::string& host, int port);
  /// Binds to a free port and returns it, or -1. Serve with listen_after_bind().
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace typotex

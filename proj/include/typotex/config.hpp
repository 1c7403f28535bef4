#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "typotex/pipeline.hpp"

namespace typotex {

/// Service configuration. The file format is one `key = value` per line;
/// blank lines and lines starting with '#' are ignored. Keys:
///
///   listen            host:port (default 127.0.0.1:8080)
///   session_dir       directory holding session records
///   static_dir        optional directory served at /
///   font              font file for plain-mode layout
///   raster.resolution pixels on the longer side of the text
///   raster.margin     transparent border in pixels
///   scale.default     texture scale at generation, in (0, 1]
///   texture.mode      remote | file | procedural
///   texture.endpoint  URL for remote mode
///   texture.timeout   seconds
///   texture.token_env environment variable holding the bearer token
///   texture.file      PNG for file mode
///   texture.width     requested texture width
///   texture.height    requested texture height
///   reshape.mode      remote | plain
///   reshape.endpoint  URL for remote mode
///   reshape.timeout   seconds
///
/// Relative paths resolve against the directory of the config file.
/// Font bundled with the project, used when no font is configured.
std::filesystem::path default_font_path();

struct ServiceConfig {
  ServiceConfig() { pipeline.font_path = default_font_path(); }

  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path session_dir = "sessions";
  std::optional<std::filesystem::path> static_dir;
  PipelineSettings pipeline;
};

/// Throws ConfigError on unknown keys, malformed lines or bad values.
ServiceConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
ServiceConfig load_config(const std::filesystem::path& path);

}  // namespace typotex

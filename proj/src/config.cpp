#include "typotex/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace typotex {
namespace {

std::string trim(const std::string& s) {
  const std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  return s.substr(begin, s.find_last_not_of(" \t\r") - begin + 1);
}

double to_number(const std::string& key, const std::string& value) {
  double out = 0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || end != value.data() + value.size()) {
    throw ConfigError("'" + key + "' expects a number, got '" + value + "'");
  }
  return out;
}

int to_int(const std::string& key, const std::string& value) {
  int out = 0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || end != value.data() + value.size()) {
    throw ConfigError("'" + key + "' expects an integer, got '" + value + "'");
  }
  return out;
}

std::chrono::milliseconds to_timeout(const std::string& key, const std::string& value) {
  const double seconds = to_number(key, value);
  if (!(seconds > 0)) throw ConfigError("'" + key + "' must be positive");
  return std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000.0));
}

}  // namespace

std::filesystem::path default_font_path() {
  if (const char* env = std::getenv("TYPOTEX_FONT")) return env;
  return TYPOTEX_DEFAULT_FONT;
}

ServiceConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  ServiceConfig cfg;
  auto resolve = [&](const std::string& value) {
    const std::filesystem::path p(value);
    return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
  };

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    if (key == "listen") {
      const std::size_t colon = value.rfind(':');
      if (colon == std::string::npos) throw ConfigError("'listen' expects host:port");
      cfg.host = value.substr(0, colon);
      cfg.port = to_int(key, value.substr(colon + 1));
      if (cfg.port < 0 || cfg.port > 65535) throw ConfigError("'listen' port out of range");
    } else if (key == "session_dir") {
      cfg.session_dir = resolve(value);
    } else if (key == "static_dir") {
      cfg.static_dir = resolve(value);
    } else if (key == "font") {
      cfg.pipeline.font_path = resolve(value);
    } else if (key == "raster.resolution") {
      cfg.pipeline.raster_resolution = to_int(key, value);
    } else if (key == "raster.margin") {
      cfg.pipeline.raster_margin = to_int(key, value);
    } else if (key == "scale.default") {
      cfg.pipeline.default_scale = to_number(key, value);
    } else if (key == "texture.mode") {
      cfg.pipeline.provider.mode = parse_provider_mode(value);
    } else if (key == "texture.endpoint") {
      cfg.pipeline.provider.endpoint = value;
    } else if (key == "texture.timeout") {
      cfg.pipeline.provider.timeout = to_timeout(key, value);
    } else if (key == "texture.token_env") {
      cfg.pipeline.provider.auth_token_source = value;
    } else if (key == "texture.file") {
      cfg.pipeline.provider.file_path = resolve(value).string();
    } else if (key == "texture.width") {
      cfg.pipeline.texture_width = to_int(key, value);
    } else if (key == "texture.height") {
      cfg.pipeline.texture_height = to_int(key, value);
    } else if (key == "reshape.mode") {
      cfg.pipeline.reshape.mode = parse_reshape_mode(value);
    } else if (key == "reshape.endpoint") {
      cfg.pipeline.reshape.endpoint = value;
    } else if (key == "reshape.timeout") {
      cfg.pipeline.reshape.timeout = to_timeout(key, value);
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  cfg.pipeline.provider.validate();
  cfg.pipeline.reshape.validate();
  return cfg;
}

ServiceConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

}  // namespace typotex

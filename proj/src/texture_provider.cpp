#include "typotex/texture_provider.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "json.hpp"

#include "http_client.hpp"
#include "typotex/errors.hpp"
#include "typotex/png_codec.hpp"
#include "typotex/resample.hpp"

namespace typotex {
namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\n\r\f\v";
  const std::size_t begin = s.find_first_not_of(kSpace);
  if (begin == std::string_view::npos) return {};
  const std::size_t end = s.find_last_not_of(kSpace);
  return s.substr(begin, end - begin + 1);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double unit_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  h = splitmix64(h ^ c);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double smooth(double t) { return t * t * (3.0 - 2.0 * t); }

// Value noise on a lattice of cells_x x cells_y cells that wraps around,
// sampled at (u, v) in cell units.
double periodic_noise(std::uint64_t seed, std::uint64_t layer, int cells_x, int cells_y, double u, double v) {
  const double fu = std::floor(u);
  const double fv = std::floor(v);
  const int i0 = static_cast<int>(fu) % cells_x;
  const int j0 = static_cast<int>(fv) % cells_y;
  const int i1 = (i0 + 1) % cells_x;
  const int j1 = (j0 + 1) % cells_y;
  const double tu = smooth(u - fu);
  const double tv = smooth(v - fv);
  auto lattice = [&](int i, int j) {
    return unit_hash(seed, layer, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
  };
  const double top = lattice(i0, j0) + (lattice(i1, j0) - lattice(i0, j0)) * tu;
  const double bottom = lattice(i0, j1) + (lattice(i1, j1) - lattice(i0, j1)) * tu;
  return top + (bottom - top) * tv;
}

using Rgb = std::array<double, 3>;

Rgb palette_color(std::uint64_t seed, std::uint64_t slot) {
  return {40.0 + 200.0 * unit_hash(seed, 0xC0, slot, 0), 40.0 + 200.0 * unit_hash(seed, 0xC0, slot, 1),
          40.0 + 200.0 * unit_hash(seed, 0xC0, slot, 2)};
}

TextureImage conform(TextureImage image, const TextureRequest& request) {
  if (image.width() == request.width && image.height() == request.height) return image;
  return resize(image, request.width, request.height, Boundary::clamp);
}

TextureImage fetch_remote(const TextureRequest& request, const ProviderConfig& config) {
  nlohmann::json body = {{"prompt", request.prompt}, {"width", request.width}, {"height", request.height}};
  if (request.seed) body["seed"] = *request.seed;

  std::optional<std::string> token;
  if (const char* value = std::getenv(config.auth_token_source.c_str())) token = value;

  const detail::HttpOutcome outcome = detail::post_json(*config.endpoint, body.dump(), config.timeout, token);
  switch (outcome.kind) {
    case detail::HttpOutcome::Kind::timeout:
      throw ProviderTimeout("texture service timed out: " + outcome.error);
    case detail::HttpOutcome::Kind::unreachable:
      throw ServiceUnavailable("texture service unreachable: " + outcome.error);
    case detail::HttpOutcome::Kind::ok:
      break;
  }
  if (outcome.status < 200 || outcome.status > 299) throw ProviderRejected(outcome.status, outcome.body);
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(outcome.body.data());
  return conform(decode_png(std::span(bytes, outcome.body.size())), request);
}

}  // namespace

std::string build_prompt(std::string_view concept_text) {
  const std::string_view trimmed = trim(concept_text);
  if (trimmed.empty()) throw EmptyConcept();
  return std::string(kPromptPrefix) + std::string(trimmed);
}

TextureRequest TextureRequest::for_concept(std::string_view concept_text, int width, int height,
                                           std::optional<std::int64_t> seed) {
  return {std::string(trim(concept_text)), build_prompt(concept_text), width, height, seed};
}

std::string_view to_string(ProviderMode mode) {
  switch (mode) {
    case ProviderMode::remote:
      return "remote";
    case ProviderMode::file:
      return "file";
    case ProviderMode::procedural:
      return "procedural";
  }
  return "procedural";
}

ProviderMode parse_provider_mode(std::string_view name) {
  if (name == "remote") return ProviderMode::remote;
  if (name == "file") return ProviderMode::file;
  if (name == "procedural") return ProviderMode::procedural;
  throw ConfigError("unknown texture provider '" + std::string(name) + "'");
}

void ProviderConfig::validate() const {
  if (mode == ProviderMode::remote && (!endpoint || endpoint->empty())) {
    throw ConfigError("remote texture provider requires an endpoint");
  }
  if (mode == ProviderMode::file && (!file_path || file_path->empty())) {
    throw ConfigError("file texture provider requires a file path");
  }
  if (timeout.count() <= 0) throw ConfigError("texture provider timeout must be positive");
}

TextureImage fetch_texture(const TextureRequest& request, const ProviderConfig& config) {
  config.validate();
  if (request.width < 1 || request.height < 1) throw Error("requested texture size must be at least 1x1");
  switch (config.mode) {
    case ProviderMode::remote:
      return fetch_remote(request, config);
    case ProviderMode::file:
      if (!std::filesystem::exists(*config.file_path)) {
        throw FileNotFound("texture file '" + *config.file_path + "' does not exist");
      }
      return conform(load_png(*config.file_path), request);
    case ProviderMode::procedural:
      break;
  }
  return procedural_pattern(static_cast<std::uint64_t>(request.seed.value_or(0)), request.width, request.height);
}

TextureImage procedural_pattern(std::uint64_t seed, int width, int height) {
  // Base cell of roughly 64 px; each octave doubles the lattice frequency.
  constexpr int kOctaves = 3;
  const int base_x = std::max(1, static_cast<int>(std::lround(width / 64.0)));
  const int base_y = std::max(1, static_cast<int>(std::lround(height / 64.0)));
  const Rgb ground = palette_color(seed, 0);
  const Rgb blob = palette_color(seed, 1);
  const Rgb accent = palette_color(seed, 2);

  TextureImage out(width, height, 3);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double fx = (x + 0.5) / width;
      const double fy = (y + 0.5) / height;
      double field = 0.0;
      double amplitude = 0.5;
      for (int o = 0; o < kOctaves; ++o) {
        const int cx = base_x << o;
        const int cy = base_y << o;
        field += amplitude * periodic_noise(seed, static_cast<std::uint64_t>(o), cx, cy, fx * cx, fy * cy);
        amplitude *= 0.5;
      }
      field /= 0.875;
      // Small blobs: a finer lattice thresholded with a soft edge.
      const int bx = base_x * 4;
      const int by = base_y * 4;
      const double spots = periodic_noise(seed, 0xB10B, bx, by, fx * bx, fy * by);
      const double spot_mix = std::clamp((spots - 0.62) / 0.08, 0.0, 1.0);

      std::uint8_t* px = out.pixel(x, y);
      for (int c = 0; c < 3; ++c) {
        const double base = ground[static_cast<std::size_t>(c)] +
                            (blob[static_cast<std::size_t>(c)] - ground[static_cast<std::size_t>(c)]) * field;
        const double value = base + (accent[static_cast<std::size_t>(c)] - base) * spot_mix;
        px[c] = static_cast<std::uint8_t>(std::clamp(std::round(value), 0.0, 255.0));
      }
    }
  }
  return out;
}

}  // namespace typotex

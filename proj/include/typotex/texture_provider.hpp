#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "typotex/image.hpp"

namespace typotex {

/// Positive-prompt prefix; the concept is appended verbatim.
inline constexpr std::string_view kPromptPrefix = "Seamless repeating pattern of tiny and small ";

inline constexpr int kDefaultTextureSize = 512;

/// Prompt for a semantic concept with surrounding whitespace trimmed and
/// casing preserved. Throws EmptyConcept for blank input.
std::string build_prompt(std::string_view concept_text);

struct TextureRequest {
  std::string concept_text;
  std::string prompt;
  int width = kDefaultTextureSize;
  int height = kDefaultTextureSize;
  std::optional<std::int64_t> seed;

  /// Builds a request whose prompt is the template applied to `concept_text`.
  static TextureRequest for_concept(std::string_view concept_text, int width = kDefaultTextureSize,
                                    int height = kDefaultTextureSize,
                                    std::optional<std::int64_t> seed = std::nullopt);
};

enum class ProviderMode { remote, file, procedural };

std::string_view to_string(ProviderMode mode);
/// Throws ConfigError for unknown names.
ProviderMode parse_provider_mode(std::string_view name);

struct ProviderConfig {
  ProviderMode mode = ProviderMode::procedural;
  std::optional<std::string> endpoint;
  /// Name of the environment variable holding the bearer token. The token
  /// itself is read at request time and never stored.
  std::string auth_token_source = "TYPOTEX_TEXTURE_TOKEN";
  std::chrono::milliseconds timeout{120000};
  std::optional<std::string> file_path;

  /// Throws ConfigError when the mode's required field is missing.
  void validate() const;
};

/// Produces a texture of exactly request.width x request.height.
///
/// remote: POST {"prompt", "width", "height", "seed"?} as JSON to the
/// endpoint and decode the PNG body. file: load the PNG at file_path.
/// procedural: procedural_pattern(seed or 0, width, height). Images of
/// other sizes are resized with the Lanczos filter.
///
/// Throws ProviderTimeout, ProviderRejected, ServiceUnavailable,
/// DecodeError or FileNotFound.
TextureImage fetch_texture(const TextureRequest& request, const ProviderConfig& config);

/// Deterministic RGB value-noise texture that tiles seamlessly: the noise
/// lattice is periodic with the image size, so column w-1 continues into
/// column 0 and row h-1 into row 0.
TextureImage procedural_pattern(std::uint64_t seed, int width, int height);

}  // namespace typotex

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "typotex/compositor.hpp"
#include "typotex/errors.hpp"
#include "typotex/font.hpp"
#include "typotex/image.hpp"
#include "typotex/raster.hpp"
#include "typotex/resample.hpp"
#include "typotex/reshape.hpp"
#include "typotex/texture_provider.hpp"

namespace typotex {

inline constexpr double kDefaultScale = 0.5;
inline constexpr double kMinSliderScale = 0.05;
inline constexpr int kDefaultRasterResolution = 1024;
inline constexpr int kDefaultRasterMargin = 8;

struct PipelineSettings {
  ProviderConfig provider;
  ReshapeClientConfig reshape;
  std::filesystem::path font_path;
  /// Pixels along the longer side of the text bounding box.
  int raster_resolution = kDefaultRasterResolution;
  /// Transparent border added on every side of the text.
  int raster_margin = kDefaultRasterMargin;
  double default_scale = kDefaultScale;
  int texture_width = kDefaultTextureSize;
  int texture_height = kDefaultTextureSize;
};

enum class SessionState { ready, failed };

/// One generate-and-adjust workflow. `composed` always equals
/// composite(mask, tile(resample(texture, scale)), background).
struct Session {
  std::string id;
  SessionInputs inputs;
  SessionState state = SessionState::ready;
  std::string error;

  /// Text outline in canvas pixel coordinates.
  std::vector<Contour> outline;
  FillRule fill_rule = FillRule::nonzero;
  int canvas_width = 0;
  int canvas_height = 0;

  TextureImage texture;
  ScaleFactor scale{kDefaultScale};
  BackgroundColor background;
  ComposedImage composed;
  /// Rasterized outline; rebuilt from `outline` when a session is loaded.
  AlphaMask mask;

  std::int64_t seed = 0;
  std::string provider;
  std::string reshape;
  std::string created_at;
  std::string updated_at;

  /// Metadata keys this version does not know, carried through rewrites.
  nlohmann::json extra = nlohmann::json::object();

  /// The persisted metadata document.
  nlohmann::json metadata() const;
};

/// Thrown by Pipeline::generate when a session was created but generation
/// failed. The original error is attached as a nested exception.
class GenerationFailed : public Error {
 public:
  GenerationFailed(std::string session_id, const std::string& message)
      : Error(message), session_id_(std::move(session_id)) {}

  const std::string& session_id() const noexcept { return session_id_; }

 private:
  std::string session_id_;
};

/// Directory-backed session persistence. Each session lives in
/// `<root>/<id>/` as session.json plus texture.png, mask.png and
/// composed.png. Files are replaced atomically (write then rename).
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  void save(const Session& session) const;
  /// Writes only the metadata and composed image (the adjust path).
  void save_adjustment(const Session& session) const;
  /// Throws UnknownSession when no such directory exists.
  Session load(const std::string& id) const;
  bool exists(const std::string& id) const;
  std::vector<std::string> list() const;

 private:
  std::filesystem::path dir(const std::string& id) const;

  std::filesystem::path root_;
};

/// 128 random bits, lowercase hex.
std::string new_session_id();

/// End-to-end orchestration with an in-memory session cache in front of
/// the store. Operations on one session are serialized; different sessions
/// proceed concurrently.
class Pipeline {
 public:
  Pipeline(PipelineSettings settings, std::filesystem::path session_dir);
  ~Pipeline();

  const PipelineSettings& settings() const { return settings_; }
  SessionStore& store() { return store_; }

  /// Validates inputs (ValidationError, nothing persisted), then runs
  /// reshape -> rasterize -> fetch texture -> resample -> tile -> composite
  /// and persists the result. If a later stage fails the session is saved
  /// in the failed state and GenerationFailed is thrown with the cause
  /// nested. `seed` defaults to a random value, recorded in the session.
  Session generate(const SessionInputs& inputs, std::optional<std::int64_t> seed = std::nullopt);

  /// Recomposes from the cached original texture and mask. Throws
  /// UnknownSession, InvalidScale, NotYetGenerated.
  ComposedImage adjust(const std::string& id, std::optional<double> new_scale,
                       std::optional<BackgroundColor> new_background);

  std::vector<std::uint8_t> export_png(const std::string& id);

  /// Snapshot of the session (loaded from disk if not cached).
  Session get(const std::string& id);

  nlohmann::json metadata(const std::string& id);

  /// The text shape placed on a canvas: contours in pixel coordinates and
  /// the canvas size. Exposed so tests can check the framing.
  struct Framing {
    std::vector<Contour> contours;
    int width = 0;
    int height = 0;
  };
  static Framing frame_text(const std::vector<Contour>& contours, int resolution, int margin);

  /// The recomposition applied by generate and adjust.
  static ComposedImage compose(const AlphaMask& mask, const TextureImage& texture, ScaleFactor scale,
                               const BackgroundColor& background);

 private:
  struct Entry {
    std::mutex mutex;
    std::optional<Session> session;
  };

  std::shared_ptr<Entry> entry(const std::string& id, bool create = false);
  // Locks the entry and loads it from disk on first use.
  Session& resident(Entry& e, const std::string& id);
  const Font& font();

  PipelineSettings settings_;
  SessionStore store_;
  std::mutex font_mutex_;
  std::unique_ptr<Font> font_;
  std::mutex entries_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> entries_;
};

}  // namespace typotex

#include "typotex/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

#include "typotex/png_codec.hpp"
#include "typotex/svg_path.hpp"
#include "typotex/tiler.hpp"

namespace typotex {
namespace fs = std::filesystem;
namespace {

constexpr const char* kMetadataFile = "session.json";
constexpr const char* kTextureFile = "texture.png";
constexpr const char* kMaskFile = "mask.png";
constexpr const char* kComposedFile = "composed.png";

const char* const kKnownKeys[] = {"id",      "state",   "error",      "concept", "word",       "letter",
                                  "scale",   "background", "seed",    "provider", "reshape",   "canvas",
                                  "fill_rule", "outline", "created_at", "updated_at"};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
  const auto millis =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&seconds, &tm);
  char buf[32];
  const std::size_t n = std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%.*s.%03dZ", static_cast<int>(n), buf, static_cast<int>(millis));
  return out;
}

bool valid_id(const std::string& id) {
  if (id.size() != 32) return false;
  for (const char c : id) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

void write_atomically(const fs::path& target, std::span<const std::uint8_t> bytes) {
  fs::path tmp = target;
  tmp += ".tmp";
  write_file(tmp, bytes);
  fs::rename(tmp, target);
}

void write_atomically(const fs::path& target, const std::string& text) {
  write_atomically(target, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

AlphaMask rasterize_session(const Session& s) {
  return rasterize(s.outline, s.canvas_width, s.canvas_height, s.fill_rule);
}

}  // namespace

nlohmann::json Session::metadata() const {
  nlohmann::json doc = extra.is_object() ? extra : nlohmann::json::object();
  doc["id"] = id;
  doc["state"] = state == SessionState::ready ? "ready" : "failed";
  doc["error"] = error;
  doc["concept"] = inputs.concept_text;
  doc["word"] = inputs.word;
  doc["letter"] = inputs.letter;
  doc["scale"] = scale.value();
  doc["background"] = format_hex_color(background);
  doc["seed"] = seed;
  doc["provider"] = provider;
  doc["reshape"] = reshape;
  doc["canvas"] = {{"width", canvas_width}, {"height", canvas_height}};
  doc["fill_rule"] = fill_rule == FillRule::evenodd ? "evenodd" : "nonzero";
  doc["outline"] = to_path_data(outline);
  doc["created_at"] = created_at;
  doc["updated_at"] = updated_at;
  return doc;
}

// ---------------------------------------------------------------- store

SessionStore::SessionStore(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

fs::path SessionStore::dir(const std::string& id) const {
  if (!valid_id(id)) throw UnknownSession(id);
  return root_ / id;
}

bool SessionStore::exists(const std::string& id) const {
  return valid_id(id) && fs::exists(root_ / id / kMetadataFile);
}

void SessionStore::save(const Session& session) const {
  const fs::path d = dir(session.id);
  fs::create_directories(d);
  if (!session.texture.empty()) write_atomically(d / kTextureFile, encode_png(session.texture));
  if (session.mask.width() > 0) write_atomically(d / kMaskFile, encode_png(session.mask.to_gray()));
  save_adjustment(session);
}

void SessionStore::save_adjustment(const Session& session) const {
  const fs::path d = dir(session.id);
  fs::create_directories(d);
  if (!session.composed.empty()) write_atomically(d / kComposedFile, encode_png(session.composed));
  write_atomically(d / kMetadataFile, session.metadata().dump(2) + "\n");
}

Session SessionStore::load(const std::string& id) const {
  const fs::path d = dir(id);
  if (!fs::exists(d / kMetadataFile)) throw UnknownSession(id);
  std::ifstream in(d / kMetadataFile);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("corrupt metadata for session '" + id + "': " + e.what());
  }

  Session s;
  try {
    s.id = doc.at("id").get<std::string>();
    s.state = doc.at("state").get<std::string>() == "ready" ? SessionState::ready : SessionState::failed;
    s.error = doc.value("error", "");
    s.inputs = {doc.at("concept").get<std::string>(), doc.at("word").get<std::string>(),
                doc.at("letter").get<std::string>()};
    s.scale = ScaleFactor(doc.at("scale").get<double>());
    s.background = parse_hex_color(doc.at("background").get<std::string>());
    s.seed = doc.value("seed", std::int64_t{0});
    s.provider = doc.value("provider", "");
    s.reshape = doc.value("reshape", "");
    s.canvas_width = doc.at("canvas").at("width").get<int>();
    s.canvas_height = doc.at("canvas").at("height").get<int>();
    s.fill_rule = doc.value("fill_rule", "nonzero") == "evenodd" ? FillRule::evenodd : FillRule::nonzero;
    s.outline = parse_svg_path(doc.value("outline", ""));
    s.created_at = doc.value("created_at", "");
    s.updated_at = doc.value("updated_at", "");
  } catch (const nlohmann::json::exception& e) {
    throw Error("corrupt metadata for session '" + id + "': " + e.what());
  }
  for (const char* key : kKnownKeys) doc.erase(key);
  s.extra = std::move(doc);

  if (s.state == SessionState::ready) {
    s.texture = load_png(d / kTextureFile);
    s.composed = load_png(d / kComposedFile);
    s.mask = rasterize_session(s);
  }
  return s;
}

std::vector<std::string> SessionStore::list() const {
  std::vector<std::string> ids;
  for (const auto& item : fs::directory_iterator(root_)) {
    const std::string name = item.path().filename().string();
    if (item.is_directory() && valid_id(name) && fs::exists(item.path() / kMetadataFile)) ids.push_back(name);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string new_session_id() {
  static thread_local std::random_device device;
  std::string id;
  static constexpr char kHex[] = "0123456789abcdef";
  for (int word = 0; word < 4; ++word) {
    std::uint32_t bits = device();
    for (int nibble = 0; nibble < 8; ++nibble) {
      id.push_back(kHex[bits & 0xF]);
      bits >>= 4;
    }
  }
  return id;
}

// ---------------------------------------------------------------- pipeline

Pipeline::Pipeline(PipelineSettings settings, fs::path session_dir)
    : settings_(std::move(settings)), store_(std::move(session_dir)) {
  settings_.provider.validate();
  settings_.reshape.validate();
  if (settings_.raster_resolution < 1) throw ConfigError("raster resolution must be positive");
  if (settings_.raster_margin < 0) throw ConfigError("raster margin must not be negative");
  if (settings_.texture_width < 1 || settings_.texture_height < 1) {
    throw ConfigError("texture size must be at least 1x1");
  }
  (void)ScaleFactor(settings_.default_scale);
}

Pipeline::~Pipeline() = default;

const Font& Pipeline::font() {
  std::lock_guard lock(font_mutex_);
  if (!font_) font_ = std::make_unique<Font>(Font::from_file(settings_.font_path.string()));
  return *font_;
}

Pipeline::Framing Pipeline::frame_text(const std::vector<Contour>& contours, int resolution, int margin) {
  const BoundingBox box = control_bounds(contours);
  const double extent = std::max(box.width(), box.height());
  if (contours.empty() || !(extent > 0)) throw LayoutError("text has no visible outline");
  const double k = resolution / extent;
  Framing out;
  out.width = static_cast<int>(std::ceil(box.width() * k - 1e-9)) + 2 * margin;
  out.height = static_cast<int>(std::ceil(box.height() * k - 1e-9)) + 2 * margin;
  out.width = std::max(out.width, 1);
  out.height = std::max(out.height, 1);
  const Point2 shift{margin - box.min.x * k, margin - box.min.y * k};
  for (const Contour& c : contours) out.contours.push_back(c.scaled(k, k).translated(shift));
  return out;
}

ComposedImage Pipeline::compose(const AlphaMask& mask, const TextureImage& texture, ScaleFactor scale,
                                const BackgroundColor& background) {
  const TextureImage scaled = resample(texture, scale, Boundary::wrap);
  return composite(mask, tile(scaled, mask.width(), mask.height()), background);
}

std::shared_ptr<Pipeline::Entry> Pipeline::entry(const std::string& id, bool create) {
  std::lock_guard lock(entries_mutex_);
  if (const auto it = entries_.find(id); it != entries_.end()) return it->second;
  if (!create && !store_.exists(id)) throw UnknownSession(id);
  auto slot = std::make_shared<Entry>();
  entries_.emplace(id, slot);
  return slot;
}

Session& Pipeline::resident(Entry& e, const std::string& id) {
  if (!e.session) e.session = store_.load(id);
  return *e.session;
}

Session Pipeline::generate(const SessionInputs& inputs, std::optional<std::int64_t> seed) {
  inputs.validate();

  Session s;
  s.id = new_session_id();
  s.inputs = inputs;
  s.scale = ScaleFactor(settings_.default_scale);
  s.seed = seed.value_or(static_cast<std::int64_t>(std::random_device{}() & 0x7FFFFFFF));
  s.provider = std::string(to_string(settings_.provider.mode));
  s.reshape = std::string(to_string(settings_.reshape.mode));
  s.created_at = s.updated_at = utc_timestamp();

  try {
    const Font* font_ptr = settings_.reshape.mode == ReshapeMode::plain ? &font() : nullptr;
    const TextShape shape = reshape_text(inputs, settings_.reshape, font_ptr);
    Framing framing = frame_text(shape.contours, settings_.raster_resolution, settings_.raster_margin);
    s.outline = std::move(framing.contours);
    s.fill_rule = shape.fill_rule;
    s.canvas_width = framing.width;
    s.canvas_height = framing.height;
    s.mask = rasterize_session(s);

    const TextureRequest request = TextureRequest::for_concept(inputs.concept_text, settings_.texture_width,
                                                               settings_.texture_height, s.seed);
    s.texture = fetch_texture(request, settings_.provider);
    s.composed = compose(s.mask, s.texture, s.scale, s.background);
    store_.save(s);
  } catch (const std::exception& e) {
    s.state = SessionState::failed;
    s.error = e.what();
    s.composed = ComposedImage{};
    store_.save(s);
    auto slot = entry(s.id, true);
    {
      std::lock_guard lock(slot->mutex);
      slot->session = s;
    }
    std::throw_with_nested(GenerationFailed(s.id, e.what()));
  }

  auto slot = entry(s.id, true);
  std::lock_guard lock(slot->mutex);
  slot->session = s;
  return s;
}

ComposedImage Pipeline::adjust(const std::string& id, std::optional<double> new_scale,
                               std::optional<BackgroundColor> new_background) {
  std::optional<ScaleFactor> scale;
  if (new_scale) scale = ScaleFactor(*new_scale);
  auto slot = entry(id);
  std::lock_guard lock(slot->mutex);
  Session& s = resident(*slot, id);
  if (s.state != SessionState::ready) throw NotYetGenerated(id);
  if (scale) s.scale = *scale;
  if (new_background) s.background = *new_background;
  s.composed = compose(s.mask, s.texture, s.scale, s.background);
  s.updated_at = utc_timestamp();
  store_.save_adjustment(s);
  return s.composed;
}

std::vector<std::uint8_t> Pipeline::export_png(const std::string& id) {
  auto slot = entry(id);
  std::lock_guard lock(slot->mutex);
  const Session& s = resident(*slot, id);
  if (s.state != SessionState::ready || s.composed.empty()) throw NotYetGenerated(id);
  return encode_png(s.composed);
}

Session Pipeline::get(const std::string& id) {
  auto slot = entry(id);
  std::lock_guard lock(slot->mutex);
  return resident(*slot, id);
}

nlohmann::json Pipeline::metadata(const std::string& id) {
  auto slot = entry(id);
  std::lock_guard lock(slot->mutex);
  return resident(*slot, id).metadata();
}

}  // namespace typotex

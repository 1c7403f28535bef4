// Command-line front end: generate, adjust, serve, plus two debug dumps.

#include <cmath>
#include <csignal>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "typotex/config.hpp"
#include "typotex/font.hpp"
#include "typotex/http_api.hpp"
#include "typotex/pipeline.hpp"
#include "typotex/png_codec.hpp"
#include "typotex/resample.hpp"
#include "typotex/reshape.hpp"
#include "typotex/svg_path.hpp"

namespace {

using namespace typotex;

struct Common {
  std::string config_path;
  std::string session_dir;
};

ServiceConfig base_config(const Common& common) {
  ServiceConfig cfg = common.config_path.empty() ? ServiceConfig{} : load_config(common.config_path);
  if (!common.session_dir.empty()) cfg.session_dir = common.session_dir;
  return cfg;
}

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--config", common.config_path, "Config file")->check(CLI::ExistingFile);
  cmd->add_option("--session-dir", common.session_dir, "Session directory (overrides config)");
}

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

HttpApi* g_server = nullptr;

void handle_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Textured semantic typography"};
  app.require_subcommand(1);

  // generate
  Common gen_common;
  SessionInputs inputs;
  std::string out_path;
  std::optional<std::string> provider;
  std::optional<std::string> texture_file;
  std::optional<std::string> texture_endpoint;
  std::optional<std::string> reshape_endpoint;
  std::optional<std::int64_t> seed;
  std::optional<double> gen_scale;
  std::optional<std::string> gen_background;
  std::optional<std::string> font_path;
  auto* generate = app.add_subcommand("generate", "Create a session and write the composed PNG");
  add_common(generate, gen_common);
  generate->add_option("--concept", inputs.concept_text, "Semantic concept")->required();
  generate->add_option("--word", inputs.word, "Word to render")->required();
  generate->add_option("--letter", inputs.letter, "Letter of the word to stylize")->required();
  generate->add_option("--out", out_path, "Output PNG path")->required();
  generate->add_option("--provider", provider, "Texture provider")
      ->check(CLI::IsMember({"procedural", "file", "remote"}));
  generate->add_option("--texture-file", texture_file, "PNG used by the file provider");
  generate->add_option("--texture-endpoint", texture_endpoint, "URL used by the remote provider");
  generate->add_option("--reshape-endpoint", reshape_endpoint, "Reshape service URL (enables remote reshape)");
  generate->add_option("--seed", seed, "Texture seed");
  generate->add_option("--scale", gen_scale, "Texture scale in (0, 1]");
  generate->add_option("--background", gen_background, "Background color #RRGGBB");
  generate->add_option("--font", font_path, "Font for plain layout");

  // adjust
  Common adj_common;
  std::string session_id;
  std::optional<double> adj_scale;
  std::optional<std::string> adj_background;
  std::optional<std::string> adj_out;
  auto* adjust = app.add_subcommand("adjust", "Change scale or background of a stored session");
  add_common(adjust, adj_common);
  adjust->add_option("--session", session_id, "Session id")->required();
  adjust->add_option("--scale", adj_scale, "Texture scale in (0, 1]");
  adjust->add_option("--background", adj_background, "Background color #RRGGBB");
  adjust->add_option("--out", adj_out, "Also write the composed PNG here");

  // serve
  Common serve_common;
  std::optional<std::string> listen;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  add_common(serve, serve_common);
  serve->add_option("--listen", listen, "host:port (overrides config)");

  // kernel
  int lobes = 3;
  double step = 0.01;
  auto* kernel = app.add_subcommand("kernel", "Print the Lanczos kernel as CSV");
  kernel->add_option("--lobes", lobes, "Lobe count")->check(CLI::PositiveNumber);
  kernel->add_option("--step", step, "Sample spacing")->check(CLI::PositiveNumber);

  // outline
  std::string glyph_char;
  double size_px = 256;
  std::optional<std::string> outline_font;
  auto* outline = app.add_subcommand("outline", "Print a glyph outline as path data");
  outline->add_option("--char", glyph_char, "Character")->required();
  outline->add_option("--size", size_px, "Em size in pixels")->check(CLI::PositiveNumber);
  outline->add_option("--font", outline_font, "Font file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << one_line(e.what()) << "\n";
    return 1;
  }

  try {
    if (generate->parsed()) {
      ServiceConfig cfg = base_config(gen_common);
      PipelineSettings& settings = cfg.pipeline;
      if (provider) settings.provider.mode = parse_provider_mode(*provider);
      if (texture_file) settings.provider.file_path = *texture_file;
      if (texture_endpoint) settings.provider.endpoint = *texture_endpoint;
      if (reshape_endpoint) {
        settings.reshape.mode = ReshapeMode::remote;
        settings.reshape.endpoint = *reshape_endpoint;
      }
      if (font_path) settings.font_path = *font_path;
      if (gen_scale) settings.default_scale = ScaleFactor(*gen_scale).value();
      std::optional<BackgroundColor> background;
      if (gen_background) background = parse_hex_color(*gen_background);

      Pipeline pipeline(settings, cfg.session_dir);
      Session session;
      try {
        session = pipeline.generate(inputs, seed);
      } catch (const GenerationFailed& e) {
        throw Error(std::string(e.what()) + " (session " + e.session_id() + ")");
      }
      if (background) pipeline.adjust(session.id, std::nullopt, background);
      save_png(out_path, pipeline.get(session.id).composed);
      std::cout << session.id << "\n";
    } else if (adjust->parsed()) {
      const ServiceConfig cfg = base_config(adj_common);
      std::optional<BackgroundColor> background;
      if (adj_background) background = parse_hex_color(*adj_background);
      Pipeline pipeline(cfg.pipeline, cfg.session_dir);
      const ComposedImage image = pipeline.adjust(session_id, adj_scale, background);
      if (adj_out) save_png(*adj_out, image);
    } else if (serve->parsed()) {
      ServiceConfig cfg = base_config(serve_common);
      if (listen) {
        const ServiceConfig addr = parse_config("listen = " + *listen);
        cfg.host = addr.host;
        cfg.port = addr.port;
      }
      Pipeline pipeline(cfg.pipeline, cfg.session_dir);
      HttpApi server(pipeline, cfg.static_dir);
      g_server = &server;
      std::signal(SIGINT, handle_signal);
      std::signal(SIGTERM, handle_signal);
      std::cerr << "listening on " << cfg.host << ":" << cfg.port << "\n";
      if (!server.listen(cfg.host, cfg.port)) {
        g_server = nullptr;
        throw Error("cannot listen on " + cfg.host + ":" + std::to_string(cfg.port));
      }
      g_server = nullptr;
    } else if (kernel->parsed()) {
      std::cout << "x,weight\n";
      const int count = static_cast<int>(std::floor(lobes / step + 1e-9));
      for (int i = -count; i <= count; ++i) {
        const double x = i * step;
        std::cout << x << "," << kernel_weight(x, lobes) << "\n";
      }
    } else if (outline->parsed()) {
      const std::u32string cps = decode_utf8(glyph_char);
      if (cps.size() != 1) throw Error("--char must be a single character");
      const Font font = Font::from_file(outline_font.value_or(default_font_path().string()));
      std::cout << to_path_data(font.outline(cps.front(), size_px).contours) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << one_line(e.what()) << "\n";
    return 1;
  }
  return 0;
}

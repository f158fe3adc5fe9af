#include <CLI11.hpp>

#include <iostream>

#include "ocp/dsl.hpp"
#include "ocp/engine.hpp"
#include "ocp/server.hpp"

namespace {

ocp::EngineConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  return ocp::EngineConfig::from_file(path);
}

void load_models(ocp::Engine& engine, const std::vector<std::string>& files) {
  for (const auto& f : files) engine.load_file(f);
}

void print_stats(ocp::Engine& engine) {
  size_t concepts = 0, individuals = 0, facts = 0, metas = 0;
  for (const auto& name : engine.repo_names()) {
    const ocp::Repository& r = engine.repo(name);
    concepts += r.concepts().size();
    individuals += r.all_oids().size();
    for (const auto& [pred, pairs] : r.interpretation().facts) {
      (void)pred;
      facts += pairs.size();
    }
    for (int32_t level = 1; level <= r.max_level(); ++level)
      metas += r.level_objects(level).size();
  }
  std::cout << "repositories: " << engine.repo_names().size() << "\n"
            << "concepts: " << concepts << "\n"
            << "individuals: " << individuals << "\n"
            << "facts: " << facts << "\n"
            << "meta-objects: " << metas << "\n"
            << "views: " << engine.view_names().size() << "\n"
            << "users: " << engine.profiles().users().size() << "\n"
            << "coordinates: " << engine.profiles().coordinates().all().size() << "\n"
            << "log-position: " << engine.position() << "\n";

  const auto& cfg = engine.config();
  std::vector<std::string> segment_coords;
  for (const auto& c : {cfg.preferences_coordinate, cfg.registration_coordinate})
    if (engine.profiles().coordinates().find(c)) segment_coords.push_back(c);
  if (!segment_coords.empty() && !engine.profiles().users().empty()) {
    std::vector<std::string> users;
    for (const auto& [name, p] : engine.profiles().users()) {
      (void)p;
      users.push_back(name);
    }
    auto cells = ocp::segment_users(users, segment_coords, engine.profiles());
    std::string label;
    for (const auto& c : segment_coords) label += (label.empty() ? "" : ", ") + c;
    std::cout << "segmentation over (" << label << "): " << cells.size() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"object-calculus repository engine and portal publisher"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "configuration file (key = value lines)");

  // load
  auto* load = app.add_subcommand("load", "parse model files and report the resulting state");
  std::vector<std::string> load_files;
  std::string load_log;
  load->add_option("files", load_files, "model files (.dsl)")->required();
  load->add_option("--log", load_log, "append the resulting command log to this file");

  // serve
  auto* serve = app.add_subcommand("serve", "run the line-protocol server");
  std::vector<std::string> serve_files;
  std::string serve_log;
  int serve_port = -1;
  serve->add_option("files", serve_files, "model files loaded before serving");
  serve->add_option("--port", serve_port, "listen port (0 picks one)");
  serve->add_option("--log", serve_log, "persistence log (replayed if present, then appended)");

  // replay
  auto* replay = app.add_subcommand("replay", "rebuild state from a log");
  std::string replay_log;
  uint64_t replay_to = 0;
  bool replay_has_to = false;
  replay->add_option("--log", replay_log, "log file")->required();
  replay->add_option("--to", replay_to, "stop after this position")->each([&](const std::string&) {
    replay_has_to = true;
  });

  // render
  auto* render = app.add_subcommand("render", "render one view for a user");
  std::string render_view_name, render_user, render_log;
  std::vector<std::string> render_files;
  render->add_option("view", render_view_name, "view name")->required();
  render->add_option("--user", render_user, "user id")->required();
  render->add_option("--model", render_files, "model files");
  render->add_option("--log", render_log, "log file to restore state from");

  // stats
  auto* stats = app.add_subcommand("stats", "print model statistics");
  std::vector<std::string> stats_files;
  std::string stats_log;
  stats->add_option("--model", stats_files, "model files");
  stats->add_option("--log", stats_log, "log file to restore state from");

  CLI11_PARSE(app, argc, argv);

  try {
    ocp::EngineConfig config = load_config(config_path);

    if (load->parsed()) {
      ocp::Engine engine(config);
      if (!load_log.empty()) engine.attach_log_file(load_log);
      load_models(engine, load_files);
      engine.flush_log();
      std::cout << "loaded " << load_files.size() << " file(s), " << engine.position()
                << " statements\n";
      return 0;
    }

    if (serve->parsed()) {
      ocp::Engine engine(config);
      std::string log_path = !serve_log.empty() ? serve_log : config.log_path;
      if (!log_path.empty()) {
        std::ifstream probe(log_path);
        if (probe.good()) engine.load_log_file(log_path);
      }
      load_models(engine, serve_files);
      if (!log_path.empty()) engine.attach_log_file(log_path);
      int port = serve_port >= 0 ? serve_port : config.port;
      ocp::LineServer server(engine, port);
      std::cout << "listening on port " << server.port() << "\n";
      server.run();
      engine.flush_log();
      return 0;
    }

    if (replay->parsed()) {
      ocp::Engine engine(config);
      engine.load_log_file(replay_log,
                           replay_has_to ? std::optional<uint64_t>(replay_to) : std::nullopt);
      std::cout << "replayed to position " << engine.position() << "\n";
      print_stats(engine);
      return 0;
    }

    if (render->parsed()) {
      ocp::Engine engine(config);
      if (!render_log.empty()) engine.load_log_file(render_log);
      load_models(engine, render_files);
      uint64_t session = engine.open_session(render_user);
      ocp::RenderedView rv = engine.render_view(render_view_name, session);
      engine.close_session(session);
      std::cout << rv.body;
      return 0;
    }

    if (stats->parsed()) {
      ocp::Engine engine(config);
      if (!stats_log.empty()) engine.load_log_file(stats_log);
      load_models(engine, stats_files);
      print_stats(engine);
      return 0;
    }
  } catch (const ocp::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ocp::EngineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

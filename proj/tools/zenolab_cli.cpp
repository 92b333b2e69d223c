// zenolab: run Zeno / strong-damping experiments from INI configs or presets.
//
//   zenolab run <config.ini | preset-name> [--out DIR] [--threads N] [--seed S]
//   zenolab presets [--write DIR]
//   zenolab plot <report.csv>
//
// Exit codes: 0 success, 2 configuration error (including unreadable input),
// 3 invariant violation during a run, 1 anything else.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "zenolab/errors.hpp"
#include "zenolab/experiment.hpp"
#include "zenolab/parallel.hpp"

namespace fs = std::filesystem;
using namespace zenolab;

namespace {

ExperimentConfig resolve(const std::string& target) {
  if (fs::is_regular_file(target)) return load_config(target);
  if (const Preset* p = find_preset(target)) return parse_config(p->config);
  throw ConfigError("file", "'" + target + "' is neither a readable file nor a preset name");
}

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("ZENOLAB_OUT_DIR"); env && *env) return env;
  return ".";
}

int cmd_run(const std::string& target, const std::string& out_flag, unsigned threads,
            std::optional<std::uint64_t> seed) {
  ExperimentConfig cfg = resolve(target);
  if (seed) cfg.seed = *seed;
  set_thread_count(threads);
  const ExperimentResult res = run_experiment(cfg);

  const fs::path dir = output_dir(out_flag);
  const fs::path csv = dir / (cfg.output_path.empty() ? cfg.id + ".csv" : cfg.output_path);
  write_csv(csv, res.rows);
  std::cout << cfg.id << " (" << to_string(cfg.kind) << "): " << res.rows.size()
            << " rows -> " << csv.string() << '\n';
  for (const auto& note : res.notes) std::cout << "  " << note << '\n';
  return 0;
}

int cmd_presets(const std::string& write_dir) {
  for (const auto& p : presets()) {
    std::cout << p.name << "\t" << p.description << '\n';
  }
  if (!write_dir.empty()) {
    fs::create_directories(write_dir);
    for (const auto& p : presets()) {
      std::ofstream out(fs::path(write_dir) / (p.name + ".ini"), std::ios::binary);
      out << p.config;
    }
  }
  return 0;
}

int cmd_plot(const std::string& csv) {
  std::cout << emit_plot_script(csv).string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Zeno and strong damping numerical laboratory"};
  app.require_subcommand(1);

  std::string out_dir;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "run an experiment config or preset");
  std::string target;
  run->add_option("config", target, "INI config file or preset name")->required();
  run->add_option("--out", out_dir, "output directory (default: $ZENOLAB_OUT_DIR or .)");
  run->add_option("--threads", threads, "worker threads, 0 = all cores")->capture_default_str();
  run->add_option("--seed", seed, "override experiment.seed");

  auto* list = app.add_subcommand("presets", "list the built-in presets");
  std::string write_dir;
  list->add_option("--write", write_dir, "also write each preset as <name>.ini into DIR");

  auto* plot = app.add_subcommand("plot", "emit a matplotlib script for a report CSV");
  std::string csv;
  plot->add_option("csv", csv, "report CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(target, out_dir, threads, seed);
    if (*list) return cmd_presets(write_dir);
    if (*plot) return cmd_plot(csv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ganlab/error.hpp"
#include "ganlab/experiments.hpp"

namespace {

int run_command(const std::string& config_path, int seed_override,
                const std::string& out_override, bool svg_override) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read config file '" << config_path << "'\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  ganlab::ExperimentConfig config;
  try {
    config = ganlab::parse_config(buffer.str());
  } catch (const ganlab::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (seed_override >= 0) config.seed = static_cast<std::uint64_t>(seed_override);
  if (!out_override.empty()) config.out = out_override;
  if (svg_override) config.svg = true;

  try {
    auto start = std::chrono::steady_clock::now();
    ganlab::RunOutput result = ganlab::run_experiment(config);
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    std::cout << "wrote " << result.csv_path;
    if (!result.svg_path.empty()) std::cout << " and " << result.svg_path;
    std::cout << " (" << result.table.rows().size() << " rows, " << elapsed.count()
              << " s)\n";
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

int list_command() {
  for (const auto& [name, description] : ganlab::experiment_catalog()) {
    std::cout << name << "\n    " << description << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for Wasserstein projection estimators, "
               "robust location fits, and minimax flow dynamics"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int seed = -1;
  bool svg = false;
  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("config", config_path, "Path to a key = value config file")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out_dir, "Output directory (default from config)");
  run->add_flag("--svg", svg, "Also emit an SVG convenience plot");

  auto* list = app.add_subcommand("list", "List available experiments");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return run_command(config_path, seed, out_dir, svg);
  if (list->parsed()) return list_command();
  return 2;
}

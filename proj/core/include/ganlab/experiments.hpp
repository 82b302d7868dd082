#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ganlab/table.hpp"

namespace ganlab {

/// Flat key = value experiment configuration. Unknown keys are rejected.
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  std::vector<int> n;
  std::vector<int> d;
  int reps = 16;
  double h = 1e-3;
  double t_end = 0.0;           // 0 means the experiment default
  double epsilon = 0.1;
  double lambda = 1.0;
  int rank = 1;
  std::vector<double> a_values;
  int probes = 256;
  std::string distance = "moment-w2";  // matching: moment-w2 | assignment-w2
  std::vector<double> k_diag;
  double outlier_distance = 10.0;
  double perturbation = 1e-4;
  std::string out = ".";
  bool svg = false;

  static const std::vector<std::string>& known_experiments();
};

/// Parses and fully validates flat key = value text ('#' comments allowed);
/// throws UnknownKey / BadValue / MissingRequired with a line diagnostic.
ExperimentConfig parse_config(const std::string& text);

struct RunOutput {
  ResultTable table;
  std::string csv_path;
  std::string svg_path;  // empty when svg emission is off
};

/// Runs the configured experiment, writes <name>.csv (and <name>.svg when
/// requested) under config.out, and returns the table. Deterministic given
/// the seed; cell failures carry the failing (d, n, rep) in the message.
RunOutput run_experiment(const ExperimentConfig& config);

/// One-line description of each experiment for the CLI listing.
std::vector<std::pair<std::string, std::string>> experiment_catalog();

}  // namespace ganlab

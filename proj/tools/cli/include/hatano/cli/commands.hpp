#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hatano/cli/config.hpp"

namespace hatano::cli {

/// Command-line values layered over the config file. Empty means unset.
struct Overrides {
  std::string config_path;
  std::vector<std::size_t> n;
  std::vector<double> g;
  std::string eps;
  std::string seed;
  std::string realizations;
  std::string precision;
  std::string out;
  bool zero_potential = false;
  std::string sample_path;
  std::string input_dir;
};

ExperimentConfig resolve_config(const Overrides& o);  // throws ConfigError

/// Each command writes its artifacts and manifest.json into the output
/// directory and returns the manifest path; `log` receives progress lines.
std::filesystem::path cmd_sample(const ExperimentConfig& c, const Overrides& o, std::ostream& log);
std::filesystem::path cmd_lyapunov(const ExperimentConfig& c, const Overrides& o, std::ostream& log);
std::filesystem::path cmd_bands(const ExperimentConfig& c, const Overrides& o, std::ostream& log);
std::filesystem::path cmd_spectrum(const ExperimentConfig& c, const Overrides& o, std::ostream& log);
std::filesystem::path cmd_flow(const ExperimentConfig& c, const Overrides& o, std::ostream& log);
std::filesystem::path cmd_verify(const ExperimentConfig& c, const Overrides& o, std::ostream& log);
std::filesystem::path cmd_sweep(const ExperimentConfig& c, const Overrides& o, std::ostream& log);
std::filesystem::path cmd_plot(const ExperimentConfig& c, const Overrides& o, std::ostream& log);

/// Exit status of the command line: 0 success, 1 configuration or input
/// error, 2 capability exceeded, 3 structure violation or non-convergence.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hatano::cli

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hatano/numerics/roots.hpp"
#include "hatano/potential.hpp"

namespace hatano::cli {

/// Invalid or unreadable experiment configuration (exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PrecisionPolicy { automatic, standard, extended };

struct LyapunovSettings {
  double spacing = 0.02;
  std::int64_t steps = 20000;
  std::int64_t replicas = 16;
};

struct LargeDeviationSettings {
  double energy = 0.5;
  std::size_t replicas = 500;
};

struct ExperimentConfig {
  DistributionSpec spec = DistributionSpec::uniform(0.0, 1.0);
  std::vector<std::size_t> n{60};
  std::vector<double> g_grid{0.05, 0.10, 0.15};
  double epsilon = 0.15;
  std::size_t realizations = 200;
  std::uint64_t seed = 42;
  LyapunovSettings lyapunov;
  LargeDeviationSettings large_deviation;
  PrecisionPolicy precision = PrecisionPolicy::automatic;
  std::size_t points_per_stretch = 100;
  /// epsilon of the derivative large-deviation check.
  double derivative_epsilon = 0.2;
  std::string output_dir = "out";

  void validate() const;  // throws ConfigError
  std::string to_json() const;
  /// Accepts a bare config or a manifest written by any command (its
  /// "config" member). Missing keys keep their defaults.
  static ExperimentConfig from_json(std::string_view text);
};

ExperimentConfig load_config(const std::filesystem::path& path);

/// Extended precision when the exponentially small scales of the run,
/// e^{-gamma_max n}, fall below 1e-12.
Precision resolve_precision(PrecisionPolicy policy, std::size_t n, double gamma_max);

std::string_view to_string(PrecisionPolicy p);
PrecisionPolicy precision_policy_from_string(const std::string& s);  // throws ConfigError

}  // namespace hatano::cli

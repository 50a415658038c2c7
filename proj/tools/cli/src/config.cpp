#include "hatano/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hatano/errors.hpp"

namespace hatano::cli {

using json = nlohmann::ordered_json;

namespace {

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

PrecisionPolicy precision_policy_from_string(const std::string& s) {
  if (s == "auto") return PrecisionPolicy::automatic;
  if (s == "standard") return PrecisionPolicy::standard;
  if (s == "extended") return PrecisionPolicy::extended;
  throw ConfigError("precision must be auto, standard or extended, got '" + s + "'");
}

std::string_view to_string(PrecisionPolicy p) {
  switch (p) {
    case PrecisionPolicy::standard:
      return "standard";
    case PrecisionPolicy::extended:
      return "extended";
    default:
      return "auto";
  }
}

void ExperimentConfig::validate() const {
  if (n.empty()) throw ConfigError("n must name at least one ring length");
  for (std::size_t m : n)
    if (m < 2) throw ConfigError("ring length n must be at least 2");
  for (double g : g_grid)
    if (!std::isfinite(g) || g < 0.0) throw ConfigError("g values must be finite and >= 0");
  for (std::size_t i = 1; i < g_grid.size(); ++i)
    if (!(g_grid[i] > g_grid[i - 1])) throw ConfigError("g_grid must be strictly increasing");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (!(derivative_epsilon > 0.0)) throw ConfigError("derivative_epsilon must be > 0");
  if (realizations == 0) throw ConfigError("realizations must be positive");
  if (!(lyapunov.spacing > 0.0 && lyapunov.spacing <= 0.02))
    throw ConfigError("lyapunov.spacing must lie in (0, 0.02]");
  if (lyapunov.steps < 1000) throw ConfigError("lyapunov.steps must be at least 1000");
  if (lyapunov.replicas < 2) throw ConfigError("lyapunov.replicas must be at least 2");
  if (large_deviation.replicas == 0) throw ConfigError("large_deviation.replicas must be positive");
  if (points_per_stretch == 0) throw ConfigError("points_per_stretch must be positive");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["spec"] = json::parse(spec.to_json());
  j["n"] = n;
  j["g_grid"] = g_grid;
  j["epsilon"] = epsilon;
  j["realizations"] = realizations;
  j["seed"] = seed;
  j["lyapunov"] = {{"spacing", lyapunov.spacing}, {"steps", lyapunov.steps}, {"replicas", lyapunov.replicas}};
  j["large_deviation"] = {{"energy", large_deviation.energy},
                          {"replicas", large_deviation.replicas}};
  j["precision"] = std::string(to_string(precision));
  j["points_per_stretch"] = points_per_stretch;
  j["derivative_epsilon"] = derivative_epsilon;
  j["output_dir"] = output_dir;
  return j.dump(2) + "\n";
}

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (j.contains("config") && j.contains("command")) j = j.at("config");

  ExperimentConfig c;
  try {
    if (j.contains("spec")) c.spec = DistributionSpec::from_json(j.at("spec").dump());
    if (j.contains("n")) {
      const json& n = j.at("n");
      c.n = n.is_array() ? n.get<std::vector<std::size_t>>() : std::vector<std::size_t>{n.get<std::size_t>()};
    }
    read(j, "g_grid", c.g_grid);
    read(j, "epsilon", c.epsilon);
    read(j, "realizations", c.realizations);
    read(j, "seed", c.seed);
    if (j.contains("lyapunov")) {
      const json& l = j.at("lyapunov");
      read(l, "spacing", c.lyapunov.spacing);
      read(l, "steps", c.lyapunov.steps);
      read(l, "replicas", c.lyapunov.replicas);
    }
    if (j.contains("large_deviation")) {
      const json& l = j.at("large_deviation");
      read(l, "energy", c.large_deviation.energy);
      read(l, "replicas", c.large_deviation.replicas);
    }
    if (j.contains("precision")) c.precision = precision_policy_from_string(j.at("precision").get<std::string>());
    read(j, "points_per_stretch", c.points_per_stretch);
    read(j, "derivative_epsilon", c.derivative_epsilon);
    read(j, "output_dir", c.output_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config schema: ") + e.what());
  } catch (const InvalidSpec& e) {
    throw ConfigError(std::string("config spec: ") + e.what());
  } catch (const SchemaError& e) {
    throw ConfigError(std::string("config spec: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ExperimentConfig::from_json(buf.str());
}

Precision resolve_precision(PrecisionPolicy policy, std::size_t n, double gamma_max) {
  if (policy == PrecisionPolicy::standard) return Precision::standard;
  if (policy == PrecisionPolicy::extended) return Precision::extended;
  return gamma_max * static_cast<double>(n) > -std::log(1e-12) ? Precision::extended : Precision::standard;
}

}  // namespace hatano::cli

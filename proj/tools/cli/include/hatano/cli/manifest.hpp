#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "hatano/cli/config.hpp"

namespace hatano::cli {

struct BuildInfo {
  std::string version;
  std::string compiler;
  std::string build_type;
};

BuildInfo build_info();

/// Writes a command's artifacts into one directory and, on finish(), a
/// manifest.json naming the command, config, generator, build, wall time
/// and every file written.
class RunRecorder {
 public:
  RunRecorder(std::string command, ExperimentConfig config, std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  /// `name` is relative to dir(); parent directories are created.
  void write(const std::string& name, const std::string& text);
  void add(const std::string& name) { files_.push_back(name); }
  void set_generator(std::string id) { generator_id_ = std::move(id); }
  /// Returns the manifest path.
  std::filesystem::path finish();

 private:
  std::string command_;
  ExperimentConfig config_;
  std::filesystem::path dir_;
  std::string generator_id_;
  std::vector<std::string> files_;
  std::chrono::steady_clock::time_point start_;
};

void write_text(const std::filesystem::path& path, const std::string& text);  // throws IoError
std::string read_text(const std::filesystem::path& path);                      // throws IoError

}  // namespace hatano::cli

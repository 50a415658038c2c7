#include "hatano/cli/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hatano/errors.hpp"
#include "hatano/potential.hpp"

#ifndef HATANO_VERSION
#define HATANO_VERSION "unknown"
#endif
#ifndef HATANO_BUILD_TYPE
#define HATANO_BUILD_TYPE "unknown"
#endif

namespace hatano::cli {

using json = nlohmann::ordered_json;

BuildInfo build_info() {
#if defined(__clang__)
  const std::string compiler = "clang " __clang_version__;
#elif defined(__GNUC__)
  const std::string compiler = "gcc " __VERSION__;
#else
  const std::string compiler = "unknown";
#endif
  return {HATANO_VERSION, compiler, HATANO_BUILD_TYPE};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunRecorder::RunRecorder(std::string command, ExperimentConfig config, std::filesystem::path dir)
    : command_(std::move(command)),
      config_(std::move(config)),
      dir_(std::move(dir)),
      generator_id_(CounterRng::kGeneratorId),
      start_(std::chrono::steady_clock::now()) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create '" + dir_.string() + "': " + ec.message());
}

void RunRecorder::write(const std::string& name, const std::string& text) {
  const std::filesystem::path path = dir_ / name;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  write_text(path, text);
  files_.push_back(name);
}

std::filesystem::path RunRecorder::finish() {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  const BuildInfo b = build_info();
  json m;
  m["command"] = command_;
  m["config"] = json::parse(config_.to_json());
  m["generator_id"] = generator_id_;
  m["build"] = {{"version", b.version}, {"compiler", b.compiler}, {"build_type", b.build_type}};
  m["wall_time_seconds"] = wall;
  m["files"] = files_;
  const std::filesystem::path path = dir_ / "manifest.json";
  write_text(path, m.dump(2) + "\n");
  return path;
}

}  // namespace hatano::cli

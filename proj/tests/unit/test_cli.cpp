#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hatano/cli/commands.hpp"
#include "hatano/cli/config.hpp"
#include "hatano/cli/manifest.hpp"
#include "hatano/csv.hpp"
#include "hatano/verify.hpp"

namespace fs = std::filesystem;
using namespace hatano;
using namespace hatano::cli;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hatano_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) { return read_text(p); }

fs::path tiny_config(const fs::path& dir) {
  ExperimentConfig c;
  c.n = {12};
  c.realizations = 3;
  c.lyapunov.steps = 1000;
  c.lyapunov.replicas = 2;
  c.lyapunov.spacing = 0.02;
  c.large_deviation.replicas = 20;
  c.points_per_stretch = 20;
  c.output_dir = (dir / "sweep").string();
  const fs::path p = dir / "tiny.json";
  write_text(p, c.to_json());
  return p;
}

}  // namespace

TEST(Config, DefaultsRoundTrip) {
  const ExperimentConfig c;
  EXPECT_NO_THROW(c.validate());
  const ExperimentConfig back = ExperimentConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_EQ(back.n, std::vector<std::size_t>{60});
  EXPECT_EQ(back.realizations, 200u);
}

TEST(Config, PartialManifestAndErrors) {
  const auto c = ExperimentConfig::from_json(R"({"n": [8, 16], "epsilon": 0.2, "precision": "extended"})");
  EXPECT_EQ(c.n.size(), 2u);
  EXPECT_EQ(c.precision, PrecisionPolicy::extended);
  EXPECT_EQ(c.g_grid.size(), 3u);
  const std::string manifest = json{{"command", "bands"}, {"config", json::parse(c.to_json())}}.dump();
  EXPECT_EQ(ExperimentConfig::from_json(manifest).to_json(), c.to_json());
  EXPECT_THROW(ExperimentConfig::from_json("{"), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(R"({"n": "six"})"), ConfigError);
  EXPECT_THROW(precision_policy_from_string("quad"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);

  ExperimentConfig bad;
  bad.epsilon = -1;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = {};
  bad.n = {1};
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = {};
  bad.g_grid = {-0.1};
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Config, PrecisionRule) {
  EXPECT_EQ(resolve_precision(PrecisionPolicy::automatic, 60, 0.5), Precision::extended);
  EXPECT_EQ(resolve_precision(PrecisionPolicy::automatic, 60, 0.3), Precision::standard);
  EXPECT_EQ(resolve_precision(PrecisionPolicy::standard, 600, 1.0), Precision::standard);
  EXPECT_EQ(resolve_precision(PrecisionPolicy::extended, 4, 0.0), Precision::extended);
}

TEST(Cli, SpectrumOfTheFreeRing) {
  const fs::path dir = scratch("spectrum");
  const CliRun r = invoke({"spectrum", "--n", "4", "--g", "0.5", "--zero-potential", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(fs::path(r.out.substr(0, r.out.find('\n'))), dir / "manifest.json");
  const CsvTable t = parse_csv(slurp(dir / "spectrum.csv"));
  EXPECT_EQ(t.header, (std::vector<std::string>{"g", "j", "re", "im", "is_real"}));
  ASSERT_EQ(t.rows.size(), 4u);
  std::vector<double> mods;
  for (const auto& row : t.rows) mods.push_back(std::hypot(std::stod(row[2]), std::stod(row[3])));
  const double expect[] = {2 * std::cosh(0.5), 2 * std::sinh(0.5)};
  for (double m : mods) EXPECT_TRUE(std::abs(m - expect[0]) < 1e-12 || std::abs(m - expect[1]) < 1e-12) << m;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"bands", "--config", "/nonexistent.json"}).code, 1);
  EXPECT_EQ(invoke({"bands", "--n", "four"}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_EQ(invoke({"bands", "--precision", "quad", "--out", scratch("badprec").string()}).code, 1);
  EXPECT_EQ(invoke({"bands", "--n", "1", "--out", scratch("badn").string()}).code, 1);
}

TEST(Cli, SampleBandsAndPlot) {
  const fs::path dir = scratch("bands");
  ASSERT_EQ(invoke({"sample", "--n", "10", "--seed", "5", "--out", (dir / "s").string()}).code, 0);
  const fs::path sample = dir / "s" / "sample.json";
  ASSERT_TRUE(fs::exists(sample));
  const CliRun b = invoke({"bands", "--sample", sample.string(), "--out", (dir / "b").string()});
  ASSERT_EQ(b.code, 0) << b.err;
  const CsvTable t = parse_csv(slurp(dir / "b" / "bands.csv"));
  EXPECT_EQ(t.rows.size(), 10u);
  EXPECT_EQ(t.header.front(), "j");
  EXPECT_EQ(json::parse(slurp(dir / "b" / "sample.json")).at("values"), json::parse(slurp(sample)).at("values"));

  ASSERT_EQ(invoke({"flow", "--sample", sample.string(), "--out", (dir / "f").string()}).code, 0);
  const CliRun p = invoke({"plot", "--in", (dir / "f").string(), "--out", (dir / "p").string()});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_TRUE(fs::exists(dir / "p" / "flow.svg"));
  EXPECT_EQ(invoke({"plot", "--in", (dir / "s").string(), "--out", (dir / "q").string()}).code, 1);
}

TEST(Cli, TinySweepIsReproducibleFromItsManifest) {
  const fs::path dir = scratch("sweep");
  const fs::path cfg = tiny_config(dir);
  const CliRun first = invoke({"sweep", "--config", cfg.string()});
  ASSERT_EQ(first.code, 0) << first.err;
  const fs::path manifest = dir / "sweep" / "manifest.json";
  const json m = json::parse(slurp(manifest));
  EXPECT_EQ(m.at("command"), "sweep");
  std::vector<std::string> files = m.at("files").get<std::vector<std::string>>();
  for (const auto& f : {"profile.csv", "records.csv", "rates.csv", "fits.csv", "band_rates.csv", "flows.csv", "summary.json"})
    EXPECT_NE(std::find(files.begin(), files.end(), f), files.end()) << f;

  const json summary = json::parse(slurp(dir / "sweep" / "summary.json"));
  EXPECT_EQ(summary.at("n"), 12);
  EXPECT_EQ(summary.at("targets").at("deterministic_violations").at("value"), 0);

  const CliRun again = invoke({"sweep", "--config", manifest.string(), "--out", (dir / "again").string()});
  ASSERT_EQ(again.code, 0) << again.err;
  for (const auto& f : files) EXPECT_EQ(slurp(dir / "sweep" / f), slurp(dir / "again" / f)) << f;
}

TEST(Cli, VerifySingleSample) {
  const fs::path dir = scratch("verify");
  const fs::path cfg = tiny_config(dir);
  const std::string fixture = std::string(HATANO_TEST_SOURCE_DIR) + "/fixtures/n4.json";
  const CliRun r = invoke({"verify", "--config", cfg.string(), "--sample", fixture, "--out", (dir / "v").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto recs = records_from_csv(slurp(dir / "v" / "records.csv"));
  EXPECT_FALSE(recs.empty());
  for (const auto& rec : recs)
    if (rec.statement_id == stmt::kDiscIdentity || rec.statement_id == stmt::kLemma2) EXPECT_TRUE(rec.passed);
}

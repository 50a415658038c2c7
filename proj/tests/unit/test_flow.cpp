#include <gtest/gtest.h>

#include <json.hpp>

#include "hatano/csv.hpp"
#include "hatano/errors.hpp"
#include "hatano/flow.hpp"
#include "oracles.hpp"

using namespace hatano;

namespace {

std::vector<double> grid(double step, double top) {
  std::vector<double> g;
  for (int i = 0; i * step <= top + 1e-12; ++i) g.push_back(i * step);
  return g;
}

}  // namespace

TEST(Flow, FixtureSnapshotsMatchIndependentSolves) {
  const PotentialSample s = oracle::fixture_n4();
  const auto g = grid(0.05, 1.0);
  const SpectrumFlow f = flow(s, g);
  ASSERT_EQ(f.g_grid.size(), 21u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto direct = eigvals_g(s, SpectralParams::make(g[i], 4)).eigenvalues;
    EXPECT_LE(hausdorff(f.snapshot(i), direct), 1e-8) << g[i];
  }
}

TEST(Flow, RandomRingsTrackWithoutBreaks) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const PotentialSample s = sample_potential(DistributionSpec::uniform(0, 1), 60, derive_seed(12, seed));
    const BandStructure bs = band_structure(s, Precision::extended);
    const auto g = grid(0.02, 0.8);
    const SpectrumFlow f = flow(s, bs, g);
    for (std::size_t i = 0; i < g.size(); i += 8) {
      const auto direct = eigvals_g(s, bs, SpectralParams::make(g[i], 60)).eigenvalues;
      EXPECT_LE(hausdorff(f.snapshot(i), direct), 1e-8);
    }
    // Pair convention: once non-real, index t is in the upper half plane
    // and its partner is the conjugate.
    for (std::size_t j = 0; j < 60; ++j)
      for (std::size_t i = 0; i < g.size(); ++i)
        if (!f.is_real[j][i] && f.trajectories[j][i].imag() > 0) {
          ASSERT_LT(j + 1, 60u);
          EXPECT_FALSE(f.is_real[j + 1][i]);
          EXPECT_LT(std::abs(f.trajectories[j + 1][i] - std::conj(f.trajectories[j][i])), 1e-12);
        }
    // Real branches move monotonically in their direction.
    for (std::size_t j = 0; j < 60; ++j)
      for (std::size_t i = 1; i < g.size(); ++i)
        if (f.is_real[j][i])
          EXPECT_GE(f.direction[j] * (f.trajectories[j][i].real() - f.trajectories[j][i - 1].real()), -1e-12);
  }
}

TEST(Flow, GridValidation) {
  const PotentialSample s = oracle::fixture_n4();
  EXPECT_THROW(flow(s, std::vector<double>{0.1, 0.2}), InvalidArgument);
  EXPECT_THROW(flow(s, std::vector<double>{0.0, 0.2, 0.2}), InvalidArgument);
  EXPECT_THROW(flow(s, std::vector<double>{}), InvalidArgument);
}

TEST(Flow, CsvAndSummary) {
  const PotentialSample s = oracle::fixture_n4();
  const SpectrumFlow f = flow(s, std::vector<double>{0.0, 0.5, 1.0});
  const CsvTable t = parse_csv(f.to_csv());
  EXPECT_EQ(t.header, (std::vector<std::string>{"g", "j", "re", "im", "is_real"}));
  EXPECT_EQ(t.rows.size(), 12u);
  const auto j = nlohmann::json::parse(f.summary_json());
  EXPECT_EQ(j.at("n").get<int>(), 4);
  EXPECT_EQ(j.at("direction").size(), 4u);
  EXPECT_TRUE(j.at("critical_g").at(3).is_null());
}

TEST(Flow, DefaultGrid) {
  const PotentialSample s = oracle::fixture_n4();
  const BandStructure bs = band_structure(s);
  const auto g = default_flow_grid(bs, GammaProfile({{-5, 0.4, 0.01, 1000, 2}, {5, 0.4, 0.01, 1000, 2}}));
  ASSERT_EQ(g.size(), 64u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_NEAR(g.back(), 0.48, 1e-12);
  EXPECT_NEAR(default_flow_grid(bs, zero_profile(-5, 5)).back(), 2.0, 1e-12);
}

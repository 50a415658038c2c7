#include <gtest/gtest.h>

#include <cmath>

#include <json.hpp>

#include "hatano/errors.hpp"
#include "hatano/verify.hpp"
#include "oracles.hpp"

using namespace hatano;

namespace {

PotentialSample zero(std::size_t n) { return sample_potential(DistributionSpec::constant(0.0), n, 0); }

GammaProfile flat(double gamma, double err = 1e-4) {
  return GammaProfile({{-10.0, gamma, err, 1000, 2}, {10.0, gamma, err, 1000, 2}});
}

// Free Laplacian: gamma(E) = arccosh(|E|/2) outside [-2, 2], 0 inside.
GammaProfile free_laplacian(double lo, double hi, double h) {
  std::vector<LyapunovEstimate> pts;
  for (double E : uniform_grid(lo, hi, h)) pts.push_back({E, std::abs(E) > 2.0 ? std::acosh(std::abs(E) / 2.0) : 0.0, 0.0, 1000, 2});
  return GammaProfile(std::move(pts));
}

const GammaProfile& cheap_profile() {
  static const GammaProfile p(lyapunov_profile(DistributionSpec::uniform(0, 1), uniform_grid(-4, 4, 0.02), 5000, 4, 3));
  return p;
}

bool all_pass(const std::vector<CheckRecord>& rs) {
  for (const auto& r : rs)
    if (!r.passed) return false;
  return !rs.empty();
}

}  // namespace

TEST(DiscIdentity, ClosedFormAndFixture) {
  const auto z = check_disc_identity(zero(4), 0.5);
  EXPECT_TRUE(all_pass(z));
  EXPECT_EQ(std::count_if(z.begin(), z.end(), [](auto& r) { return r.statement_id == stmt::kDiscIdentity; }), 4);
  const auto f = check_disc_identity(oracle::fixture_n4(), 0.1, "fx");
  EXPECT_TRUE(all_pass(f));
  EXPECT_EQ(f.back().statement_id, stmt::kDiscOracle);
  EXPECT_EQ(f.back().sample_id, "fx");
  EXPECT_TRUE(all_pass(check_disc_identity(oracle::fixture_n4(), 0.0)));
}

TEST(TheoremBounds, EqualityAtZeroAndGating) {
  const PotentialSample s = sample_potential(DistributionSpec::uniform(0, 1), 10, 2);
  const BandStructure bs = band_structure(s, Precision::extended);
  const auto at0 = check_theorem_bounds(s, bs, 0.0, 0.15, flat(2.0), "s");
  ASSERT_EQ(at0.size(), 30u);
  for (const auto& r : at0) {
    EXPECT_TRUE(r.passed) << r.statement_id;
    if (r.statement_id == stmt::kThmLower) EXPECT_EQ(r.margin, 0.0);
    if (r.statement_id == stmt::kThmUpper) EXPECT_TRUE(std::isinf(r.margin));
  }
  EXPECT_TRUE(check_theorem_bounds(s, bs, 0.1, 0.15, flat(0.2), "s").empty());
  EXPECT_EQ(check_theorem_bounds(s, bs, 0.05, 0.15, flat(0.2), "s").size(), 30u);
}

TEST(RateProfile, SentinelAndGating) {
  const PotentialSample s = sample_potential(DistributionSpec::uniform(0, 1), 10, 2);
  const BandStructure bs = band_structure(s);
  const auto one = rate_profile(s, bs, 3, std::vector<double>{0.0}, flat(1.0), 0.15);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(std::isinf(one[0].rate) && one[0].rate > 0);
  EXPECT_FALSE(fit_rate(one).has_value());

  const PotentialSample z = zero(8);
  EXPECT_TRUE(rate_profile(z, band_structure(z), 3, std::vector<double>{0.0, 0.1}, zero_profile(-4, 4), 0.15).empty());
  EXPECT_TRUE(rate_grid(0.1, 0.15).empty());
  const auto g = rate_grid(0.4, 0.15);
  EXPECT_EQ(g.front(), 0.05);
  EXPECT_LE(g.back(), 0.25 + 1e-12);
}

TEST(RateFit, ExactLine) {
  std::vector<RateRecord> rs;
  for (double g : {0.05, 0.1, 0.2}) rs.push_back({4, g, 0.7 - g, 0.0});
  rs.push_back({4, 0.3, std::nan(""), 0.0});
  const auto f = fit_rate(rs);
  ASSERT_TRUE(f);
  EXPECT_NEAR(f->slope, -1.0, 1e-12);
  EXPECT_NEAR(f->intercept, 0.7, 1e-12);
  EXPECT_EQ(f->points, 3u);
  EXPECT_EQ(f->j, 4);
}

TEST(LastInequality, ZeroPotentialAndFixture) {
  const PotentialSample z = zero(8);
  EXPECT_TRUE(all_pass(check_last_inequality(z, band_structure(z), 50)));
  const PotentialSample f = oracle::fixture_n4();
  const auto rs = check_last_inequality(f, band_structure(f), 100);
  EXPECT_TRUE(all_pass(rs));
  EXPECT_EQ(rs.size(), 8u);
  EXPECT_THROW(check_last_inequality(f, band_structure(f), 0), InvalidArgument);
}

TEST(LastInequality, RandomRingsNeverViolate) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PotentialSample s = sample_potential(DistributionSpec::uniform(-1, 1), 30, derive_seed(4, seed));
    const BandStructure bs = band_structure(s, Precision::extended);
    EXPECT_TRUE(all_pass(check_last_inequality(s, bs, 100)));
  }
}

TEST(Markov, ChebyshevExtremality) {
  for (std::size_t n : {4u, 9u, 16u}) {
    const CheckRecord r = check_markov(zero(n), -2.0, 2.0);
    EXPECT_TRUE(r.passed);
    EXPECT_LT(std::abs(r.margin), 1e-3) << n;
  }
  const PotentialSample shifted = sample_potential(DistributionSpec::constant(0.7), 6, 0);
  const CheckRecord r = check_markov(shifted, 0.7 - 2.0, 0.7 + 2.0);
  EXPECT_LT(std::abs(r.margin), 1e-3);
  const PotentialSample f = oracle::fixture_n4();
  const BandStructure bs = band_structure(f);
  EXPECT_TRUE(check_markov(f, bs.eigenvalues.front().to_double(), bs.eigenvalues.back().to_double()).passed);
  EXPECT_THROW(check_markov(f, 1.0, 1.0), InvalidArgument);
}

TEST(TurningPointBound, ZeroPotentialNotApplicable) {
  const PotentialSample z = zero(6);
  const auto rs = check_turning_point_bound(z, band_structure(z), 0.15, zero_profile(-4, 4));
  ASSERT_EQ(rs.size(), 2u * 5u + 1u);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(rs[i].status, CheckStatus::not_applicable);
  EXPECT_EQ(rs.back().statement_id, stmt::kRootGap);
}

TEST(DerivativeLd, ZeroPotentialMarkovBound) {
  const std::size_t n = 20;
  const PotentialSample z = zero(n);
  const BandStructure bs = band_structure(z);
  const double eps = 0.2;
  // Linear interpolation of the square-root edge of arccosh costs ~n sqrt(h).
  const CheckRecord r = check_derivative_ld(z, bs, free_laplacian(bs.k.lo, bs.k.hi, 1e-4), eps);
  EXPECT_GE(r.margin, eps * n - 2.0 * std::log(double(n)) - 0.25);
}

TEST(Spacings, DegenerateEnsembleRejected) {
  const std::vector<PotentialSample> e{sample_potential(DistributionSpec::constant(1.0), 5, 0)};
  EXPECT_THROW(check_spacings(e, 0.15), DegenerateSpec);
  std::vector<PotentialSample> ok;
  for (std::uint64_t r = 0; r < 5; ++r) ok.push_back(sample_potential(DistributionSpec::uniform(0, 1), 20, r));
  const auto rs = check_spacings(ok, 0.15);
  ASSERT_EQ(rs.size(), 5u);
  EXPECT_EQ(rs[2].sample_id, "2");
}

TEST(CoshBound, FixtureAndRandomRings) {
  const PotentialSample f = oracle::fixture_n4();
  const BandStructure fb = band_structure(f, Precision::extended);
  for (const auto& r : check_intermediate_cosh_bound(f, fb, 0.1)) EXPECT_TRUE(r.passed);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PotentialSample s = sample_potential(DistributionSpec::uniform(0, 1), 60, derive_seed(6, seed));
    const BandStructure bs = band_structure(s, Precision::extended);
    for (double g : {0.05, 0.1, 0.15}) EXPECT_TRUE(all_pass(check_intermediate_cosh_bound(s, bs, g)));
  }
}

TEST(EnsembleChecks, BandwidthAndCriticalGOnOneRing) {
  const PotentialSample s = sample_potential(DistributionSpec::uniform(0, 1), 60, 77);
  const BandStructure bs = band_structure(s, Precision::extended);
  const auto bw = check_bandwidth(bs, 0.15, cheap_profile());
  EXPECT_EQ(bw.size(), 60u);
  const auto gc = check_critical_g(bs, 0.15, cheap_profile());
  EXPECT_EQ(gc.size(), 58u);
  const auto dev = bandwidth_rate_deviation(bs, cheap_profile());
  EXPECT_LT(median(dev), 0.15);
}

TEST(Records, StatusToleranceAndClassification) {
  EXPECT_EQ(tolerance(stmt::kLemma2), 1e-9);
  EXPECT_EQ(tolerance(stmt::kThmUpper), 0.0);
  EXPECT_TRUE(make_record(std::string(stmt::kMarkov), "", {}, {}, {}, -5e-10).passed);
  EXPECT_FALSE(make_record(std::string(stmt::kThmUpper), "", {}, {}, {}, -5e-10).passed);
  EXPECT_EQ(make_record("x", "", {}, {}, {}, 0.5, 1.0).status, CheckStatus::inconclusive);
  EXPECT_EQ(make_record("x", "", {}, {}, {}, -2.0, 1.0).status, CheckStatus::fail);
  for (auto s : {CheckStatus::pass, CheckStatus::fail, CheckStatus::inconclusive, CheckStatus::skipped,
                 CheckStatus::not_applicable})
    EXPECT_EQ(check_status_from_string(to_string(s)), s);
  EXPECT_EQ(to_string(CheckStatus::not_applicable), "not-applicable");
  EXPECT_THROW(check_status_from_string("maybe"), SchemaError);
}

TEST(Records, CsvRoundTripAndSummary) {
  std::vector<CheckRecord> rs{
      make_record(std::string(stmt::kThmUpper), "0", 3, 0.1, 0.15, 1.5),
      make_record(std::string(stmt::kThmLower), "0", 3, 0.1, 0.15, -0.5),
      make_record(std::string(stmt::kThmUpper), "1", 2, 0.1, 0.15, 2.0),
      make_record(std::string(stmt::kThmLower), "1", 2, 0.1, 0.15, 0.1),
      make_record(std::string(stmt::kThmUpper), "2", 2, 0.1, 0.15, 0.1, 1.0),
      make_record(std::string(stmt::kThmLower), "2", 2, 0.1, 0.15, 3.0),
      make_record(std::string(stmt::kMarkov), "0", {}, {}, {}, 0.0),
  };
  const std::string csv = records_csv(rs);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "statement_id,sample_id,j,g,epsilon,margin,passed,status");
  const auto back = records_from_csv(csv);
  ASSERT_EQ(back.size(), rs.size());
  EXPECT_EQ(records_csv(back), csv);
  EXPECT_FALSE(back[6].j.has_value());

  const auto sum = summarize(rs);
  EXPECT_EQ(sum.at(std::string(stmt::kThmUpper)).inconclusive, 1u);
  EXPECT_DOUBLE_EQ(sum.at(std::string(stmt::kThmLower)).pass_frequency(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(joint_bound_frequency(rs), 0.5);
  const auto j = nlohmann::json::parse(summary_json(sum));
  EXPECT_EQ(j.at("markov").at("passed").get<int>(), 1);
  EXPECT_THROW(records_from_csv("a,b\n1,2\n"), SchemaError);
}

TEST(Median, IgnoresNaN) {
  EXPECT_EQ(median({3.0, std::nan(""), 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({1.0, 2.0, 3.0, 4.0}), 2.5);
  EXPECT_TRUE(std::isnan(median({})));
}

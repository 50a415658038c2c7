#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hatano/discriminant.hpp"
#include "hatano/errors.hpp"
#include "oracles.hpp"

using namespace hatano;
using namespace hatano::oracle;

namespace {

double value(const DiscriminantEval& e) { return e.value.to_double(); }

}  // namespace

TEST(EvalDisc, ClosedForms) {
  EXPECT_NEAR(value(eval_disc(PotentialSample::manual({0.0, 0.0}), 1.0)), -1.0, 1e-15);
  const PotentialSample z3 = sample_potential(DistributionSpec::constant(0.0), 3, 0);
  EXPECT_NEAR(value(eval_disc(z3, 2.0)), 2.0, 1e-14);
  EXPECT_EQ(value(eval_disc(z3, 0.0)), 0.0);
}

TEST(EvalDisc, FixtureMatchesExactExpansion) {
  const PotentialSample s = fixture_n4();
  const auto c = exact_disc_coeffs(exact(s.values));
  ASSERT_EQ(c.size(), 5u);
  EXPECT_NEAR(value(eval_disc(s, 1.0)), to_double(poly_eval(c, 1)), 1e-14);
  EXPECT_NEAR(value(eval_disc(s, 1.0, Precision::extended)), to_double(poly_eval(c, 1)), 1e-15);
  const DiscriminantEval d = eval_disc_deriv(s, 0.5);
  ASSERT_TRUE(d.derivative);
  EXPECT_NEAR(d.derivative->to_double(), to_double(poly_eval(poly_derivative(c), Rational(1, 2))), 1e-14);
  EXPECT_NEAR(value(d), to_double(poly_eval(c, Rational(1, 2))), 1e-14);
}

TEST(EvalDisc, DerivativeForTwoSites) {
  const DiscriminantEval d = eval_disc_deriv(PotentialSample::manual({0.0, 0.0}), 1.0);
  EXPECT_NEAR(d.derivative->to_double(), 2.0, 1e-15);
}

TEST(EvalDisc, RandomPotentialsAgainstExactArithmetic) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 12;
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    const double E = u(rng) * 1.5;
    const auto c = exact_disc_coeffs(exact(v));
    const Rational want = poly_eval(c, exact(E));
    const auto jet = trace_jet(std::span<const double>(v), DoubleDouble(E), 2);
    const double got = std::ldexp(jet.value.to_double(), jet.exp2);
    EXPECT_NEAR(got, to_double(want), 1e-25 * std::max(1.0, std::abs(to_double(want))) + 1e-28);
    const double d2 = std::ldexp(jet.d2.to_double(), jet.exp2);
    EXPECT_NEAR(d2, to_double(poly_eval(poly_derivative(poly_derivative(c)), exact(E))),
                1e-24 * std::max(1.0, std::abs(d2)));
  }
}

TEST(EvalDisc, LongRingDoesNotOverflow) {
  const PotentialSample s = sample_potential(DistributionSpec::uniform(-4, 4), 3000, 2);
  const DiscriminantEval e = eval_disc(s, 0.3);
  EXPECT_NE(e.value.sign, 0);
  EXPECT_TRUE(std::isfinite(e.value.logmag));
  EXPECT_GT(e.value.logmag, 709.0);
}

TEST(EvalDisc, ComplexJetMatchesRealOnAxis) {
  const PotentialSample s = fixture_n4();
  const auto r = trace_jet(std::span<const double>(s.values), 0.8, 1);
  const auto c = trace_jet(std::span<const double>(s.values), std::complex<double>(0.8, 0.0), 1);
  EXPECT_NEAR(std::ldexp(r.value, r.exp2), std::ldexp(c.value.real(), c.exp2), 1e-14);
  EXPECT_EQ(c.value.imag(), 0.0);
}

TEST(DiscCoeffs, TwoSitesAndChebyshev) {
  const DiscCoeffs two = disc_coeffs(std::vector<double>{0.25, -1.5});
  ASSERT_EQ(two.degree(), 2u);
  EXPECT_NEAR(two.coefficients[0].to_double(), 0.25 * -1.5 - 2.0, 1e-16);
  EXPECT_NEAR(two.coefficients[1].to_double(), 1.25, 1e-16);
  EXPECT_EQ(two.coefficients[2].to_double(), 1.0);

  const DiscCoeffs z4 = disc_coeffs(std::vector<double>(4, 0.0));
  const std::vector<double> want{2, 0, -4, 0, 1};
  for (int i = 0; i < 5; ++i) EXPECT_EQ(z4.coefficients[i].to_double(), want[i]);
}

TEST(DiscCoeffs, FixtureToTwentyFiveDigits) {
  const PotentialSample s = fixture_n4();
  const DiscCoeffs c = disc_coeffs(s);
  const auto want = exact_disc_coeffs(exact(s.values));
  for (std::size_t i = 0; i < want.size(); ++i) {
    const Rational got = exact(c.coefficients[i].hi()) + exact(c.coefficients[i].lo());
    EXPECT_LT(std::abs(to_double(got - want[i])), 1e-25) << i;
  }
  EXPECT_NEAR(c.eval(DoubleDouble(1.0)).to_double(), value(eval_disc(s, 1.0)), 1e-14);
  EXPECT_EQ(c.derivative().degree(), 3u);
}

TEST(DiscCoeffs, CapabilityLimit) {
  EXPECT_THROW(disc_coeffs(std::vector<double>(kMaxCoeffDegree + 1, 0.0)), CapabilityExceeded);
}

TEST(ChebyshevDisc, Examples) {
  EXPECT_NEAR(chebyshev_disc(1, 0.7), 0.7, 1e-16);
  EXPECT_NEAR(chebyshev_disc(5, 2.0), 2.0, 1e-14);
  EXPECT_NEAR(chebyshev_disc(6, std::sqrt(3.0)), -2.0, 1e-13);
}

TEST(ChebyshevDisc, ZeroPotentialTrace) {
  for (int n : {3, 16, 64}) {
    const PotentialSample z = sample_potential(DistributionSpec::constant(0.0), n, 0);
    for (double E = -2.5; E <= 2.5; E += 0.37) {
      const double want = chebyshev_disc(n, E);
      EXPECT_LE(std::abs(value(eval_disc(z, E)) - want), 1e-12 * std::max(1.0, std::abs(want))) << n << ' ' << E;
    }
  }
}

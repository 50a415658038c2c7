#include <gtest/gtest.h>

#include "hatano/bands.hpp"
#include "hatano/discriminant.hpp"
#include "hatano/errors.hpp"
#include "hatano/numerics/roots.hpp"
#include "oracles.hpp"

using namespace hatano;
using namespace hatano::oracle;

namespace {

RealFunction square_minus_two() {
  return [](const DoubleDouble& x) { return ScaledReal::from_dd(x * x - DoubleDouble(2.0)); };
}

// Newton in 50 digits on an exact polynomial.
Float50 newton(const std::vector<Rational>& c, double x0) {
  std::vector<Float50> cf, df;
  for (const Rational& r : c) cf.emplace_back(r);
  const auto d = poly_derivative(c);
  for (const Rational& r : d) df.emplace_back(r);
  auto eval = [](const std::vector<Float50>& p, const Float50& x) {
    Float50 acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  Float50 x = x0;
  for (int i = 0; i < 60; ++i) x -= eval(cf, x) / eval(df, x);
  return x;
}

}  // namespace

TEST(RefineRoot, SquareRootOfTwo) {
  for (bool secant : {false, true}) {
    const DoubleDouble r = refine_root(square_minus_two(), Bracket::make(square_minus_two(), 1.0, 2.0), 1e-12,
                                       Precision::standard, secant);
    EXPECT_NEAR(r.to_double(), 1.4142135623730951, 1e-12);
    EXPECT_EQ(r.lo(), 0.0);
  }
}

TEST(RefineRoot, ExtendedPrecisionReachesCapability) {
  const DoubleDouble r =
      refine_root(square_minus_two(), Bracket::make(square_minus_two(), 1.0, 2.0), 2e-28, Precision::extended);
  const Float50 err = abs(Float50(r.hi()) + Float50(r.lo()) - sqrt(Float50(2)));
  EXPECT_LT(static_cast<double>(err), 2e-28);
  EXPECT_THROW(refine_root(square_minus_two(), Bracket::make(square_minus_two(), 1.0, 2.0), 1e-28, Precision::extended),
               ToleranceUnreachable);
}

TEST(RefineRoot, OddFunctionGivesExactZero) {
  const RealFunction f = [](const DoubleDouble& x) { return ScaledReal::from_dd(x); };
  EXPECT_EQ(refine_root(f, Bracket::make(f, -1.0, 1.0), 1e-12, Precision::standard).to_double(), 0.0);
}

TEST(RefineRoot, FixtureLeftmostRootIsSmallestEigenvalue) {
  const PotentialSample s = fixture_n4();
  const BandStructure bs = band_structure(s);
  const RealFunction f = [&](const DoubleDouble& E) {
    return disc_shifted(s.values, E, Precision::standard, 0, DoubleDouble(2.0));
  };
  const DoubleDouble lo = bs.stretch_lo(0), hi = bs.turning_points[0];
  const DoubleDouble r = find_root(f, lo, hi, 1e-13, Precision::standard);
  // det(zI - H_4(0)) exactly; its smallest root.
  const auto charpoly = exact_charpoly(exact(s.values), Rational(1));
  const Float50 want = newton(charpoly, r.to_double());
  EXPECT_LT(std::abs(r.to_double() - static_cast<double>(want)), 1e-10);
}

TEST(RefineRoot, ErrorPaths) {
  const RealFunction f = square_minus_two();
  EXPECT_THROW(Bracket::make(f, 2.0, 3.0), BracketInvalid);
  EXPECT_THROW(Bracket::make(f, 2.0, 1.0), BracketInvalid);
  EXPECT_THROW(refine_root(f, Bracket::make(f, 1.0, 2.0), 1e-20, Precision::standard), ToleranceUnreachable);
  EXPECT_THROW(refine_root(f, Bracket::make(f, 1.0, 2.0), 1e-35, Precision::extended), ToleranceUnreachable);
  EXPECT_GE(min_tolerance(Precision::standard, 10.0), 10.0 * 2.0 * DBL_EPSILON);
}

TEST(RefineRoot, SteepFunctionStillConverges) {
  // Exponentially flat on one side; secant steps alone would crawl.
  const RealFunction f = [](const DoubleDouble& x) {
    const double v = x.to_double();
    return v < 0.3 ? ScaledReal::from_log(-1, -200.0 * (0.3 - v)) : ScaledReal::from_log(1, 200.0 * (v - 0.3));
  };
  const DoubleDouble r = refine_root(f, Bracket::make(f, 0.0, 1.0), 1e-14, Precision::standard);
  EXPECT_NEAR(r.to_double(), 0.3, 1e-14);
}

TEST(Precision, StringRoundTrip) {
  EXPECT_EQ(precision_from_string(to_string(Precision::extended)), Precision::extended);
  EXPECT_THROW(precision_from_string("quad"), InvalidArgument);
}

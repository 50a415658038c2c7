#include <gtest/gtest.h>

#include <random>

#include "hatano/numerics/double_double.hpp"
#include "oracles.hpp"

using namespace hatano;
using hatano::oracle::Float50;

namespace {

Float50 big(const DoubleDouble& x) { return Float50(x.hi()) + Float50(x.lo()); }

double rel_err(const DoubleDouble& got, const Float50& want) {
  if (want == 0) return std::abs(got.to_double());
  return static_cast<double>(abs((big(got) - want) / want));
}

}  // namespace

TEST(DoubleDouble, TwoSumIsErrorFree) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), b = u(rng) * 1e-9;
    double s, e;
    dd::two_sum(a, b, s, e);
    EXPECT_EQ(Float50(s) + Float50(e), Float50(a) + Float50(b));
  }
}

TEST(DoubleDouble, ArithmeticMatchesFiftyDigitReference) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const DoubleDouble a = DoubleDouble::from_sum(u(rng), u(rng) * 1e-17);
    const DoubleDouble b = DoubleDouble::from_sum(u(rng), u(rng) * 1e-17);
    EXPECT_LT(rel_err(a * b, big(a) * big(b)), 1e-30);
    EXPECT_LT(rel_err(a / b, big(a) / big(b)), 1e-30);
    const Float50 sum = big(a) + big(b);
    if (abs(sum) > 1e-3) EXPECT_LT(rel_err(a + b, sum), 1e-29);
    EXPECT_TRUE((a * b).is_normalized());
  }
}

TEST(DoubleDouble, ElementaryFunctions) {
  for (double x : {0.5, 2.0, 3.75, 100.0}) {
    EXPECT_LT(rel_err(dd::sqrt(DoubleDouble(x)), sqrt(Float50(x))), 1e-30) << x;
    EXPECT_LT(rel_err(dd::log(DoubleDouble(x)), log(Float50(x))), 1e-29) << x;
  }
  for (double x : {-3.0, -0.25, 0.0, 1.0, 20.0, 300.0}) {
    EXPECT_LT(rel_err(dd::exp(DoubleDouble(x)), exp(Float50(x))), 1e-29) << x;
    EXPECT_LT(rel_err(dd::two_cosh(DoubleDouble(x)), 2 * cosh(Float50(x))), 1e-29) << x;
  }
}

TEST(DoubleDouble, ConstantsAndOrdering) {
  EXPECT_LT(rel_err(dd::kPi, boost::math::constants::pi<Float50>()), 1e-31);
  EXPECT_LT(rel_err(dd::kLn2, log(Float50(2))), 1e-31);
  const DoubleDouble one(1.0);
  const DoubleDouble above = DoubleDouble::from_sum(1.0, 1e-20);
  EXPECT_LT(one, above);
  EXPECT_GT(above - one, DoubleDouble(0.0));
  EXPECT_EQ(dd::sign(-above), -1);
  EXPECT_EQ(dd::ldexp(above, 3), above * DoubleDouble(8.0));
}

TEST(DoubleDouble, StringRoundTripsBothParts) {
  const DoubleDouble x = DoubleDouble::from_sum(1.0 / 3.0, 1e-17 / 3.0);
  const std::string s = dd::to_string(x);
  EXPECT_NE(s.find('+'), std::string::npos);
}

TEST(ComplexDD, DivisionInvertsMultiplication) {
  const ComplexDD a(DoubleDouble(1.25), DoubleDouble(-0.5));
  const ComplexDD b(DoubleDouble(0.3), DoubleDouble(2.0));
  const ComplexDD q = (a * b) / b;
  EXPECT_LT(dd::abs(q - a), 1e-30);
  EXPECT_NEAR(dd::abs(ComplexDD(DoubleDouble(3.0), DoubleDouble(4.0))), 5.0, 1e-15);
}

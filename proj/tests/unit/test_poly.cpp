#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "hatano/discriminant.hpp"
#include "hatano/errors.hpp"
#include "hatano/numerics/poly.hpp"
#include "hatano/spectrum.hpp"
#include "oracles.hpp"

using namespace hatano;

namespace {

std::vector<DoubleDouble> coeffs(std::initializer_list<double> c) { return {c.begin(), c.end()}; }

}  // namespace

TEST(PolyRoots, QuadraticWithComplexPair) {
  auto r = poly_roots(coeffs({1.0, 0.0, 1.0}));
  sort_complex(r);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(std::abs(r[0] - Complex(0, -1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(r[1] - Complex(0, 1)), 0.0, 1e-14);
  EXPECT_EQ(r[0], std::conj(r[1]));
}

TEST(PolyRoots, ZeroPotentialCubic) {
  auto r = poly_roots(coeffs({0.0, -3.0, 0.0, 1.0}));
  const std::vector<Complex> want{-std::sqrt(3.0), 0.0, std::sqrt(3.0)};
  EXPECT_LT(hausdorff(r, want), 1e-14);
}

TEST(PolyRoots, FixtureLevelSetMatchesDenseEigenvalues) {
  const PotentialSample s = oracle::fixture_n4();
  DiscCoeffs c = disc_coeffs(s);
  c.coefficients[0] -= dd::two_cosh(DoubleDouble(0.4));
  const auto roots = poly_roots(c.coefficients);

  // Dense H_4(0.1): forward e^g, backward e^-g, periodic.
  Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
  for (int k = 0; k < 4; ++k) {
    h(k, k) = s.values[k];
    h(k, (k + 1) % 4) = std::exp(0.1);
    h((k + 1) % 4, k) = std::exp(-0.1);
  }
  const Eigen::VectorXcd ev = h.eigenvalues();
  std::vector<Complex> dense(ev.data(), ev.data() + ev.size());
  EXPECT_LT(hausdorff(roots, dense), 1e-8);
}

TEST(PolyRoots, RandomPolynomialsFromKnownRoots) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> want;
    for (int k = 0; k < 4; ++k) want.push_back(u(rng));
    const Complex z(u(rng), std::abs(u(rng)) + 0.1);
    want.push_back(z);
    want.push_back(std::conj(z));
    std::vector<oracle::Rational> p{1};
    // Expand prod (x - r) with exact real quadratic for the pair.
    auto mul = [&](const std::vector<oracle::Rational>& f) {
      std::vector<oracle::Rational> out(p.size() + f.size() - 1, oracle::Rational(0));
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j) out[i + j] += p[i] * f[j];
      p = out;
    };
    for (int k = 0; k < 4; ++k) mul({-oracle::exact(want[k].real()), 1});
    const oracle::Rational re = oracle::exact(z.real()), im = oracle::exact(z.imag());
    mul({re * re + im * im, -2 * re, 1});
    std::vector<DoubleDouble> c;
    for (const auto& r : p) {
      const double hi = oracle::to_double(r);
      c.push_back(DoubleDouble::from_sum(hi, oracle::to_double(r - oracle::exact(hi))));
    }
    EXPECT_LT(hausdorff(poly_roots(c), want), 1e-9) << trial;
  }
}

TEST(PolyRoots, ErrorPaths) {
  EXPECT_THROW(poly_roots(coeffs({1.0, 2.0, 0.0})), InvalidArgument);
  EXPECT_THROW(poly_roots(coeffs({1.0})), InvalidArgument);
}

TEST(Hausdorff, Basics) {
  const std::vector<Complex> a{0.0, 1.0}, b{0.0, 1.0, Complex(1.0, 2.0)};
  EXPECT_EQ(hausdorff(a, a), 0.0);
  EXPECT_NEAR(hausdorff(a, b), 2.0, 1e-15);
  EXPECT_EQ(hausdorff(a, b), hausdorff(b, a));
}

TEST(Aberth, MirrorModeFindsUpperHalfPlaneRoots) {
  // p(z) = z^2 + 2z + 5 = (z + 1 - 2i)(z + 1 + 2i).
  const NewtonStep step = [](Complex z) { return (z * z + 2.0 * z + 5.0) / (2.0 * z + 2.0); };
  AberthOptions o;
  o.mirror = true;
  const auto res = aberth(step, {Complex(0.0, 1.0)}, {}, o);
  ASSERT_TRUE(res.converged);
  EXPECT_NEAR(std::abs(res.roots[0] - Complex(-1.0, 2.0)), 0.0, 1e-12);
}

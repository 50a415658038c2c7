#include <gtest/gtest.h>

#include <cmath>

#include "hatano/errors.hpp"
#include "hatano/spectrum.hpp"
#include "hatano/thouless.hpp"
#include "hatano/transfer.hpp"

using namespace hatano;

namespace {

std::vector<PotentialSample> ensemble(const DistributionSpec& spec, std::size_t n, std::size_t count) {
  std::vector<PotentialSample> out;
  for (std::size_t r = 0; r < count; ++r) out.push_back(sample_potential(spec, n, derive_seed(5, r)));
  return out;
}

}  // namespace

TEST(Thouless, FreeLaplacianOutsideTheBand) {
  const auto e = ensemble(DistributionSpec::constant(0.0), 200, 50);
  for (double E : {2.5, -3.0, 4.0}) {
    const double want = std::log(std::abs(E / 2.0 + std::copysign(std::sqrt(E * E / 4.0 - 1.0), E)));
    EXPECT_NEAR(thouless_gamma(e, E).value, want, 0.02) << E;
  }
}

TEST(Thouless, EigenvalueEnergyIsClipped) {
  const PotentialSample s = sample_potential(DistributionSpec::uniform(0, 1), 40, 3);
  const double E = eigvals_hermitian(s).eigenvalues[7].real();
  const double t = thouless_term(s, E);
  EXPECT_TRUE(std::isfinite(t));
  EXPECT_GE(t, std::log(1e-300) / 40.0 - 1.0);
}

TEST(Thouless, Preconditions) {
  EXPECT_THROW(thouless_gamma(ensemble(DistributionSpec::uniform(0, 1), 60, 10), 0.5), InvalidArgument);
  EXPECT_THROW(thouless_gamma(ensemble(DistributionSpec::uniform(0, 1), 20, 60), 0.5), InvalidArgument);
  auto mixed = ensemble(DistributionSpec::uniform(0, 1), 40, 50);
  mixed.back() = sample_potential(DistributionSpec::uniform(0, 1), 41, 1);
  EXPECT_THROW(thouless_gamma(mixed, 0.5), InvalidArgument);
}

TEST(Thouless, ConsistentWithLyapunovMonteCarlo) {
  const auto spec = DistributionSpec::uniform(0.0, 1.0);
  const ThoulessEstimate th = thouless_gamma(ensemble(spec, 100, 100), 0.5);
  const LyapunovEstimate mc = lyapunov_mc(spec, 0.5, 100000, 32, 8);
  EXPECT_EQ(th.samples, 100u);
  EXPECT_LT(std::abs(th.value - mc.gamma_hat), 3.0 * std::hypot(th.std_error, mc.std_error))
      << "thouless " << th.value << " +- " << th.std_error << ", mc " << mc.gamma_hat << " +- " << mc.std_error;
}

TEST(Thouless, FiniteSizeBiasVanishesWithN) {
  const auto spec = DistributionSpec::uniform(0.0, 1.0);
  const LyapunovEstimate mc = lyapunov_mc(spec, 0.5, 100000, 32, 8);
  const ThoulessEstimate th = thouless_gamma(ensemble(spec, 400, 100), 0.5);
  EXPECT_LT(std::abs(th.value - mc.gamma_hat), 3.0 * std::hypot(th.std_error, mc.std_error));
}

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "hatano/bands.hpp"
#include "hatano/discriminant.hpp"
#include "hatano/numerics/poly.hpp"

namespace hatano {

/// Non-Hermiticity g and the level 2 cosh(ng) that every eigenvalue of
/// H_n(g) hits: det(z - H_n(g)) = Delta_n(z) - 2 cosh(ng).
struct SpectralParams {
  double g = 0.0;
  std::size_t n = 0;
  ScaledReal target;

  /// Throws InvalidArgument for g < 0, non-finite g or n g > 700.
  static SpectralParams make(double g, std::size_t n);
  DoubleDouble target_dd() const;
};

struct SpectrumResult {
  double g = 0.0;
  /// Sorted by (real part, imaginary part).
  std::vector<Complex> eigenvalues;
  std::vector<ComplexDD> eigenvalues_dd;
  std::vector<bool> is_real;
  /// 0-based band index for real eigenvalues, -1 for non-real ones.
  std::vector<int> index_map;

  std::size_t real_count() const;
};

SpectrumResult eigvals_hermitian(const BandStructure& bs);
SpectrumResult eigvals_hermitian(const PotentialSample& sample, Precision precision = Precision::standard);

/// Real eigenvalues by bisection on each stretch whose range covers the
/// target; the remaining conjugate pairs by Aberth iteration on
/// Delta_n(z) - 2 cosh(ng) evaluated through the transfer recurrence, with
/// the real ones deflated, and a double-double polish.
/// Throws CountMismatch if the counts do not add up to n.
SpectrumResult eigvals_g(const PotentialSample& sample, const SpectralParams& params,
                         Precision precision = Precision::standard);
SpectrumResult eigvals_g(const PotentialSample& sample, const BandStructure& bs, const SpectralParams& params);

/// det(zI - H_n(g)) by memoized Laplace expansion in double-double, for
/// n <= 12 only (CapabilityExceeded otherwise). At n = 2 the forward and
/// wrap-around hoppings add.
DiscCoeffs charpoly_oracle(const PotentialSample& sample, double g);
inline constexpr std::size_t kMaxOracleSize = 12;

/// (1/n) arccosh(Delta_n(E'_*) / 2) for the turning point E'_* the j-th
/// eigenvalue moves toward; +inf if it moves into an unbounded stretch.
double critical_g(const BandStructure& bs, std::size_t j);
std::vector<double> critical_gs(const BandStructure& bs);

/// Real solution of Delta_n = target on stretch j between the eigenvalue
/// and its positive end, or nothing if the stretch never reaches target.
/// `start` may tighten the bracket (a previous solution at smaller target).
std::optional<DoubleDouble> real_eigenvalue(const PotentialSample& sample, const BandStructure& bs, std::size_t j,
                                            const DoubleDouble& target,
                                            const std::optional<DoubleDouble>& start = std::nullopt);

/// Starting point in the upper half plane for the pair born at turning
/// point `tp` once 2 cosh(ng) exceeds Delta_n(E'_tp).
Complex pair_guess(const PotentialSample& sample, const BandStructure& bs, std::size_t tp, double g);

/// Upper-half-plane roots of Delta_n(z) = target, one per guess, with the
/// given real roots held fixed. Throws NoConvergence if a residual check
/// fails.
std::vector<ComplexDD> solve_pairs(const PotentialSample& sample, const DoubleDouble& target,
                                   std::span<const DoubleDouble> real_roots, std::vector<Complex> guesses);

/// |log|Delta_n(z)| - log target| evaluated in double-double.
double level_residual(std::span<const double> v, const ComplexDD& z, double log_target);

}  // namespace hatano

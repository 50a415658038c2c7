#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hatano/numerics/double_double.hpp"
#include "hatano/numerics/scaled.hpp"
#include "hatano/potential.hpp"

namespace hatano {

/// A_{E,k} = [[E - v_k, -1], [1, 0]], stored row-major.
std::array<double, 4> transfer_matrix(double E, double v);

/// Product m * exp(logscale). After every step m is rescaled by a power of
/// two so that its Frobenius norm lies in [0.5, 1); rescaling is exact.
struct ScaledMatrix2 {
  std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};
  double logscale = 0.0;

  /// log of the spectral norm of the represented matrix.
  double log_norm() const;
  double log_frobenius() const;
  ScaledReal trace() const;
  /// det(m) * exp(2 logscale), as a log-magnitude pair.
  ScaledReal determinant() const;
};

/// A_{E,n} ... A_{E,1} for the sample's potential.
ScaledMatrix2 transfer_product(std::span<const double> v, double E);
ScaledMatrix2 transfer_product(const PotentialSample& sample, double E);

/// Unscaled product in double-double; overflows for large n * gamma.
std::array<DoubleDouble, 4> transfer_product_dd(std::span<const double> v, const DoubleDouble& E);

/// Spectral norm of a 2x2 matrix.
double spectral_norm(const std::array<double, 4>& m);

struct LyapunovEstimate {
  double energy = 0.0;
  double gamma_hat = 0.0;
  double std_error = 0.0;
  std::int64_t steps = 0;
  std::int64_t replicas = 0;
};

/// Mean over replicas of (1/steps) log ||A_{E,steps} ... A_{E,1}||. Replica r
/// draws its potential from stream r + 1 of CounterRng(seed); the same
/// streams are reused at every energy, so profiles are smooth in E.
/// Throws DegenerateSpec for point-mass laws, InvalidArgument for steps <
/// 1000 or replicas < 1.
LyapunovEstimate lyapunov_mc(const DistributionSpec& spec, double E, std::int64_t steps, std::int64_t replicas,
                             std::uint64_t seed);

/// One estimate per energy of a sorted grid; parallel over grid points.
std::vector<LyapunovEstimate> lyapunov_profile(const DistributionSpec& spec, std::span<const double> E_grid,
                                               std::int64_t steps, std::int64_t replicas, std::uint64_t seed);

/// Uniform grid from lo to hi (inclusive) with spacing at most `spacing`.
std::vector<double> uniform_grid(double lo, double hi, double spacing);

/// Piecewise-linear interpolant of a Lyapunov profile; constant beyond the
/// first and last grid point.
class GammaProfile {
 public:
  GammaProfile() = default;
  explicit GammaProfile(std::vector<LyapunovEstimate> points);  // throws InvalidArgument unless sorted

  double operator()(double E) const { return interpolate(E, false); }
  double std_error(double E) const { return interpolate(E, true); }
  bool empty() const { return points_.empty(); }
  double lo() const { return points_.front().energy; }
  double hi() const { return points_.back().energy; }
  const std::vector<LyapunovEstimate>& points() const { return points_; }

  /// Columns E,gamma_hat,stderr,steps,replicas.
  std::string to_csv() const;
  static GammaProfile from_csv(const std::string& text);  // throws SchemaError

 private:
  double interpolate(double E, bool error) const;
  std::vector<LyapunovEstimate> points_;
};

/// Same law for every energy: the Lyapunov exponent is identically zero (the
/// free Laplacian inside [-2, 2] has no growth).
GammaProfile zero_profile(double lo, double hi);

struct LargeDeviationSummary {
  double energy = 0.0;
  std::size_t n = 0;
  std::size_t replicas = 0;
  double gamma_ref = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  static constexpr std::array<double, 3> kThresholds{0.1, 0.2, 0.3};
  /// Frequency of |deviation| > threshold, one per kThresholds entry.
  std::array<double, 3> tail{};
};

/// Empirical law of (1/n) log ||A_{E,n} ... A_{E,1}|| - gamma_ref over
/// independent length-n products. gamma_ref defaults to a long
/// lyapunov_mc run on a separate seed.
LargeDeviationSummary large_deviation_stats(const DistributionSpec& spec, double E, std::size_t n,
                                            std::size_t replicas, std::uint64_t seed);
LargeDeviationSummary large_deviation_stats(const DistributionSpec& spec, double E, std::size_t n,
                                            std::size_t replicas, std::uint64_t seed, double gamma_ref);

}  // namespace hatano

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hatano/numerics/double_double.hpp"
#include "hatano/numerics/roots.hpp"
#include "hatano/numerics/scaled.hpp"
#include "hatano/potential.hpp"

namespace hatano {

/// Closed energy interval.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// K = [-3 - bound, 3 + bound]; contains the spectrum of every periodic
/// and antiperiodic operator with |v_k| <= bound.
Interval spectral_interval(double bound);
/// Uses max(spec.bound(), max_k |v_k|).
Interval spectral_interval(const PotentialSample& sample);

struct Band {
  DoubleDouble left;
  DoubleDouble right;
  double width() const { return (right - left).to_double(); }
};

/// Band combinatorics of one realization. Stretch j (0-based) is the
/// monotone piece of Delta_n between turning points j - 1 and j (unbounded
/// for j = 0 and j = n - 1); it holds root j, band j and eigenvalue j.
struct BandStructure {
  std::size_t n = 0;
  Precision precision = Precision::standard;
  Interval k;
  std::vector<DoubleDouble> roots;
  std::vector<DoubleDouble> turning_points;
  /// Signed Delta_n at each turning point and its log-magnitude.
  std::vector<ScaledReal> tp_values;
  std::vector<double> tp_logmag;
  /// |Delta_n(E'_j)| equals 2 within working precision (closed gap).
  std::vector<bool> touching;
  std::vector<Band> bands;
  /// lambda_j(0): the band edge where Delta_n = +2.
  std::vector<DoubleDouble> eigenvalues;
  /// Sign of Delta_n'(E_j): +1 means Delta_n increases through the root,
  /// so the eigenvalue sits right of E_j and moves right as g grows.
  std::vector<int> direction;

  /// Turning point the j-th eigenvalue moves toward, or nothing when it
  /// moves into an unbounded outer stretch.
  std::optional<std::size_t> positive_end(std::size_t j) const;
  /// Lower/upper end of stretch j (clamped to K for outer stretches).
  DoubleDouble stretch_lo(std::size_t j) const;
  DoubleDouble stretch_hi(std::size_t j) const;
};

/// Roots are localized globally as eigenvalues of the Hermitian matrix with
/// a quarter-period twist (det(E - H) = Delta_n(E)), then refined by
/// bisection; turning points by bisection of Delta_n' between consecutive
/// roots; band edges by bisection of Delta_n -+ 2. Every count, sign and
/// interlacing property is checked; failures throw StructureViolation.
/// Eigenvalues (ascending, double precision) of the Hermitian ring with
/// corner phase e^{i theta}: the roots of Delta_n(E) = 2cos(theta).
std::vector<double> floquet_eigenvalues(std::span<const double> v, double theta);

/// Throws PrecisionExceeded when a band is narrower than the working
/// precision resolves (around e^-36 standard, e^-64 extended, relative to K).
BandStructure band_structure(const PotentialSample& sample, Precision precision = Precision::standard);

/// Absolute tolerance used for all refinements at the given precision.
double refine_tolerance(Precision precision, const Interval& k);

/// |Delta_n(E')| - 2 below this counts as a closed gap.
double touch_tolerance(Precision precision, std::size_t n);

std::vector<double> bandwidths(const BandStructure& bs);
/// -(1/n) log |B_j|; +inf for zero-width bands.
std::vector<double> bandwidth_rates(const BandStructure& bs);

struct SpacingStats {
  double min_eig_gap = 0.0;
  double min_root_gap = 0.0;
};
SpacingStats spacing_stats(const BandStructure& bs);
SpacingStats spacing_stats(const PotentialSample& sample);

std::vector<ScaledReal> turning_point_magnitudes(const BandStructure& bs);

/// Columns j,E_j,left,right,width,logwidth,tp_logmag with j 1-based and
/// tp_logmag = log|Delta_n(E'_j)| (empty for the last row).
std::string bands_csv(const BandStructure& bs);

}  // namespace hatano

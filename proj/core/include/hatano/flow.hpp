#pragma once

#include <span>
#include <string>
#include <vector>

#include "hatano/spectrum.hpp"
#include "hatano/transfer.hpp"

namespace hatano {

/// Eigenvalue trajectories g -> lambda_j(g) indexed by band (order at g = 0).
/// Once the pair born at turning point t leaves the axis, index t carries the
/// member in the upper half plane and index t + 1 its conjugate.
struct SpectrumFlow {
  std::size_t n = 0;
  std::vector<double> g_grid;
  /// trajectories[j][i] = lambda_j(g_grid[i]).
  std::vector<std::vector<Complex>> trajectories;
  std::vector<std::vector<ComplexDD>> trajectories_dd;
  std::vector<std::vector<bool>> is_real;
  std::vector<double> critical_g;
  /// +1: moves right while real, -1: moves left.
  std::vector<int> direction;

  /// Multiset of all eigenvalues at grid point i, sorted like SpectrumResult.
  std::vector<Complex> snapshot(std::size_t i) const;

  /// Columns g,j,re,im,is_real with j 1-based, ordered by g then j.
  std::string to_csv() const;
  /// n, grid, and per-index critical g (null for +inf), direction and the
  /// first grid value at which the index is non-real (null if never).
  std::string summary_json() const;
};

/// Throws InvalidArgument unless g_grid starts at 0 and strictly increases;
/// ContinuityBreak if a complex eigenvalue cannot be matched within ten times
/// its predicted step.
SpectrumFlow flow(const PotentialSample& sample, const BandStructure& bs, std::span<const double> g_grid);
SpectrumFlow flow(const PotentialSample& sample, std::span<const double> g_grid,
                  Precision precision = Precision::standard);

/// 64 uniform points on [0, min(1.2 max_j gamma(lambda_j(0)), 2)].
std::vector<double> default_flow_grid(const BandStructure& bs, const GammaProfile& gamma);

}  // namespace hatano

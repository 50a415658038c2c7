#pragma once

#include <span>

#include "hatano/potential.hpp"

namespace hatano {

struct ThoulessEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Ensemble mean of (1/n) sum_j log|E - lambda_j(0)| over the periodic
/// Hermitian eigenvalues. A term with |E - lambda_j| below 1e-300 is clipped
/// at log(1e-300). Requires >= 50 samples sharing one law and n >= 40
/// (InvalidArgument otherwise).
ThoulessEstimate thouless_gamma(std::span<const PotentialSample> ensemble, double E);

/// The same average for a single sample, without preconditions.
double thouless_term(const PotentialSample& sample, double E);

inline constexpr std::size_t kThoulessMinSamples = 50;
inline constexpr std::size_t kThoulessMinN = 40;

}  // namespace hatano

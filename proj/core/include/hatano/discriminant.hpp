#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "hatano/numerics/double_double.hpp"
#include "hatano/numerics/roots.hpp"
#include "hatano/numerics/scaled.hpp"
#include "hatano/potential.hpp"

namespace hatano {

/// Trace Delta_n and up to two E-derivatives at one point, all multiplied by
/// the common factor 2^{-exp2} (the true values are value * 2^exp2, ...).
///
/// Computed by the three-term recurrence for the first row of the transfer
/// product: x_k = (E - v_k) x_{k-1} - x_{k-2} with (x_{-1}, x_0) = (0, 1) and
/// the same recurrence for y with (y_{-1}, y_0) = (1, 0); Delta_n = x_n +
/// y_{n-1}. Intermediate values are rescaled by exact powers of two.
template <class T>
struct TraceJet {
  T value{};
  T d1{};
  T d2{};
  int exp2 = 0;
};

/// order in {0, 1, 2}: number of derivatives carried.
TraceJet<double> trace_jet(std::span<const double> v, double E, int order);
TraceJet<DoubleDouble> trace_jet(std::span<const double> v, const DoubleDouble& E, int order);
TraceJet<std::complex<double>> trace_jet(std::span<const double> v, std::complex<double> z, int order);
TraceJet<ComplexDD> trace_jet(std::span<const double> v, const ComplexDD& z, int order);

/// sign * exp(logmag) of (value * 2^exp2).
ScaledReal to_scaled(double value, int exp2);
ScaledReal to_scaled(const DoubleDouble& value, int exp2);

/// Delta_n^{(order)}(E) - shift as a ScaledReal, with the subtraction done in
/// the working precision before any rounding to log form.
ScaledReal disc_shifted(std::span<const double> v, const DoubleDouble& E, Precision precision, int order,
                        const DoubleDouble& shift = DoubleDouble(0.0));

struct DiscriminantEval {
  double energy = 0.0;
  ScaledReal value;
  std::optional<ScaledReal> derivative;
};

DiscriminantEval eval_disc(const PotentialSample& sample, double E, Precision precision = Precision::standard);
DiscriminantEval eval_disc_deriv(const PotentialSample& sample, double E,
                                 Precision precision = Precision::standard);

/// Monic coefficients of Delta_n, constant term first.
struct DiscCoeffs {
  std::vector<DoubleDouble> coefficients;

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  DoubleDouble eval(const DoubleDouble& E) const;
  DiscCoeffs derivative() const;
};

inline constexpr std::size_t kMaxCoeffDegree = 256;

/// Polynomial recurrence in double-double. Throws CapabilityExceeded for
/// n > kMaxCoeffDegree.
DiscCoeffs disc_coeffs(const PotentialSample& sample);
DiscCoeffs disc_coeffs(std::span<const double> v);

/// 2 T_n(E / 2) by the three-term recurrence c_k = E c_{k-1} - c_{k-2}.
double chebyshev_disc(int n, double E);

}  // namespace hatano

#pragma once

#include <functional>
#include <string_view>

#include "hatano/numerics/double_double.hpp"
#include "hatano/numerics/scaled.hpp"

namespace hatano {

enum class Precision { standard, extended };

std::string_view to_string(Precision p);
Precision precision_from_string(std::string_view s);

/// Scalar function of one real variable. The abscissa is passed as a
/// DoubleDouble; in standard mode it always has lo() == 0. Only the sign of
/// the result must be exact, the magnitude steers secant steps.
using RealFunction = std::function<ScaledReal(const DoubleDouble&)>;

/// Sign-change interval: lo < hi and f_lo_sign == -f_hi_sign (both nonzero).
struct Bracket {
  DoubleDouble lo;
  DoubleDouble hi;
  int f_lo_sign = 0;
  int f_hi_sign = 0;

  /// Evaluates f at both ends; throws BracketInvalid unless the signs differ.
  static Bracket make(const RealFunction& f, DoubleDouble lo, DoubleDouble hi);
  void validate() const;
};

inline constexpr int kMaxBisections = 120;

/// Smallest absolute tolerance refine_root accepts for a root near `scale`.
double min_tolerance(Precision p, double scale);

/// Shrinks the bracket until its width is <= tol_abs and returns its midpoint.
/// Bisection guarantees progress; with `secant` enabled an Illinois
/// false-position step is tried first and a bisection is forced whenever two
/// accelerated steps fail to halve the bracket.
///
/// Throws BracketInvalid for an invalid bracket, ToleranceUnreachable when
/// tol_abs is below min_tolerance(precision, ...), NoConvergence if the
/// bisection budget runs out.
DoubleDouble refine_root(const RealFunction& f, const Bracket& bracket, double tol_abs,
                         Precision precision, bool secant = true);

/// Convenience wrapper: evaluates the endpoints, returns an endpoint that is
/// an exact zero, otherwise brackets and refines.
DoubleDouble find_root(const RealFunction& f, DoubleDouble lo, DoubleDouble hi, double tol_abs,
                       Precision precision, bool secant = true);

}  // namespace hatano

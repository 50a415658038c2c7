#pragma once

#include <cmath>
#include <limits>

#include "hatano/numerics/double_double.hpp"

namespace hatano {

/// sign * exp(logmag). Used for quantities that grow or shrink like e^{+-c n}
/// (trace values at turning points, bandwidths, derivative bounds). The zero
/// value is sign == 0 with logmag == -inf.
struct ScaledReal {
  int sign = 0;
  double logmag = -std::numeric_limits<double>::infinity();

  static ScaledReal zero() { return {}; }
  static ScaledReal from_double(double x);
  static ScaledReal from_dd(const DoubleDouble& x);
  /// value = sign * exp(logmag); logmag may be any finite real.
  static ScaledReal from_log(int sign, double logmag);

  bool is_zero() const { return sign == 0; }
  /// Materializes the value; overflows to +-inf for logmag > ~709.
  double to_double() const;
  ScaledReal operator-() const { return {-sign, logmag}; }
  ScaledReal abs() const { return {sign == 0 ? 0 : 1, logmag}; }
};

ScaledReal scaled_mul(const ScaledReal& a, const ScaledReal& b);
ScaledReal scaled_div(const ScaledReal& a, const ScaledReal& b);
ScaledReal scaled_add(const ScaledReal& a, const ScaledReal& b);
ScaledReal scaled_sub(const ScaledReal& a, const ScaledReal& b);

/// Three-way comparison of represented values without exponentiating.
int scaled_compare(const ScaledReal& a, const ScaledReal& b);

inline ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) { return scaled_mul(a, b); }
inline ScaledReal operator/(const ScaledReal& a, const ScaledReal& b) { return scaled_div(a, b); }
inline ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) { return scaled_add(a, b); }
inline ScaledReal operator-(const ScaledReal& a, const ScaledReal& b) { return scaled_sub(a, b); }
inline bool operator==(const ScaledReal& a, const ScaledReal& b) {
  return a.sign == b.sign && (a.sign == 0 || a.logmag == b.logmag);
}

/// arccosh(y) for y given as log(y) >= 0, stable for huge y.
double acosh_from_log(double log_y);

/// log(2 cosh(x)) = |x| + log1p(exp(-2|x|)); never overflows.
double log_two_cosh(double x);

}  // namespace hatano

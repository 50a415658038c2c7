#include "hatano/numerics/scaled.hpp"

#include <algorithm>

namespace hatano {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

ScaledReal ScaledReal::from_double(double x) {
  if (x == 0.0 || std::isnan(x)) return {};
  return {x > 0.0 ? 1 : -1, std::log(std::abs(x))};
}

ScaledReal ScaledReal::from_dd(const DoubleDouble& x) {
  if (x.hi() == 0.0) return {};
  const DoubleDouble a = dd::abs(x);
  // log(hi + lo) = log(hi) + log1p(lo/hi)
  return {x.hi() > 0.0 ? 1 : -1, std::log(a.hi()) + std::log1p(a.lo() / a.hi())};
}

ScaledReal ScaledReal::from_log(int s, double lm) {
  if (s == 0 || lm == kNegInf) return {};
  return {s > 0 ? 1 : -1, lm};
}

double ScaledReal::to_double() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(logmag);
}

ScaledReal scaled_mul(const ScaledReal& a, const ScaledReal& b) {
  if (a.sign == 0 || b.sign == 0) return {};
  return {a.sign * b.sign, a.logmag + b.logmag};
}

ScaledReal scaled_div(const ScaledReal& a, const ScaledReal& b) {
  if (a.sign == 0) return {};
  if (b.sign == 0) return {a.sign, std::numeric_limits<double>::infinity()};
  return {a.sign * b.sign, a.logmag - b.logmag};
}

ScaledReal scaled_add(const ScaledReal& a, const ScaledReal& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const bool a_big = a.logmag >= b.logmag;
  const ScaledReal& big = a_big ? a : b;
  const ScaledReal& small = a_big ? b : a;
  const double d = small.logmag - big.logmag;  // <= 0
  if (big.sign == small.sign) return {big.sign, big.logmag + std::log1p(std::exp(d))};
  if (d == 0.0) return {};
  return {big.sign, big.logmag + std::log1p(-std::exp(d))};
}

ScaledReal scaled_sub(const ScaledReal& a, const ScaledReal& b) { return scaled_add(a, -b); }

int scaled_compare(const ScaledReal& a, const ScaledReal& b) {
  if (a.sign != b.sign) return a.sign < b.sign ? -1 : 1;
  if (a.sign == 0 || a.logmag == b.logmag) return 0;
  const int mag = a.logmag < b.logmag ? -1 : 1;
  return a.sign > 0 ? mag : -mag;
}

double acosh_from_log(double log_y) {
  if (!(log_y > 0.0)) return 0.0;
  if (log_y < 20.0) return std::acosh(std::exp(log_y));
  // acosh(y) = log y + log(1 + sqrt(1 - y^-2))
  return log_y + std::log1p(std::sqrt(-std::expm1(-2.0 * log_y)));
}

double log_two_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax));
}

}  // namespace hatano

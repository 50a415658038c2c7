#include "hatano/numerics/double_double.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace hatano {

DoubleDouble DoubleDouble::from_sum(double a, double b) {
  double s, e;
  dd::two_sum(a, b, s, e);
  return from_parts(s, e);
}

bool DoubleDouble::is_normalized() const {
  if (!std::isfinite(hi_)) return true;
  if (hi_ == 0.0) return lo_ == 0.0;
  const double ulp = std::nextafter(std::abs(hi_), std::numeric_limits<double>::infinity()) - std::abs(hi_);
  return std::abs(lo_) <= 0.5 * ulp;
}

DoubleDouble& DoubleDouble::operator+=(const DoubleDouble& b) {
  double s, e, t, f;
  dd::two_sum(hi_, b.hi_, s, e);
  dd::two_sum(lo_, b.lo_, t, f);
  e += t;
  dd::quick_two_sum(s, e, s, e);
  e += f;
  dd::quick_two_sum(s, e, hi_, lo_);
  return *this;
}

DoubleDouble& DoubleDouble::operator-=(const DoubleDouble& b) { return *this += -b; }

DoubleDouble& DoubleDouble::operator*=(const DoubleDouble& b) {
  double p, e;
  dd::two_prod(hi_, b.hi_, p, e);
  e += hi_ * b.lo_ + lo_ * b.hi_;
  dd::quick_two_sum(p, e, hi_, lo_);
  return *this;
}

DoubleDouble& DoubleDouble::operator/=(const DoubleDouble& b) {
  const double q1 = hi_ / b.hi_;
  DoubleDouble r = *this - DoubleDouble(q1) * b;
  const double q2 = r.hi_ / b.hi_;
  r -= DoubleDouble(q2) * b;
  const double q3 = r.hi_ / b.hi_;
  double s, e;
  dd::quick_two_sum(q1, q2, s, e);
  *this = from_parts(s, e) + DoubleDouble(q3);
  return *this;
}

namespace dd {

DoubleDouble abs(const DoubleDouble& a) { return a.hi() < 0.0 ? -a : a; }

DoubleDouble ldexp(const DoubleDouble& a, int e) {
  return DoubleDouble::from_parts(std::ldexp(a.hi(), e), std::ldexp(a.lo(), e));
}

DoubleDouble square(const DoubleDouble& a) { return a * a; }

int sign(const DoubleDouble& a) { return (a.hi() > 0.0) - (a.hi() < 0.0); }

DoubleDouble sqrt(const DoubleDouble& a) {
  if (a.hi() <= 0.0) return DoubleDouble{};
  const double x = 1.0 / std::sqrt(a.hi());
  const double ax = a.hi() * x;
  const DoubleDouble ax_dd(ax);
  const DoubleDouble diff = a - ax_dd * ax_dd;
  return ax_dd + DoubleDouble(diff.hi() * (x * 0.5));
}

DoubleDouble exp(const DoubleDouble& a) {
  constexpr double kMax = 709.0;
  if (a.hi() > kMax) return DoubleDouble(std::numeric_limits<double>::infinity());
  if (a.hi() < -745.0) return DoubleDouble{};
  if (a.hi() == 0.0 && a.lo() == 0.0) return DoubleDouble(1.0);

  const double m = std::floor(a.hi() / kLn2.hi() + 0.5);
  // r in [-ln2/2, ln2/2], then divided by 2^9 so the series converges fast.
  DoubleDouble r = ldexp(a - kLn2 * DoubleDouble(m), -9);

  // expm1(r) by Taylor series.
  DoubleDouble term = r;
  DoubleDouble sum = r;
  for (int k = 2; k < 20; ++k) {
    term = term * r / DoubleDouble(static_cast<double>(k));
    sum += term;
    if (std::abs(term.hi()) <= kEps * std::abs(sum.hi())) break;
  }
  // expm1(2x) = 2 expm1(x) + expm1(x)^2
  for (int i = 0; i < 9; ++i) sum = ldexp(sum, 1) + sum * sum;
  return ldexp(sum + DoubleDouble(1.0), static_cast<int>(m));
}

DoubleDouble log(const DoubleDouble& a) {
  if (a.hi() <= 0.0) return DoubleDouble(-std::numeric_limits<double>::infinity());
  DoubleDouble x(std::log(a.hi()));
  // One Newton step on exp(x) = a doubles the number of correct digits.
  x = x + a * exp(-x) - DoubleDouble(1.0);
  return x;
}

DoubleDouble two_cosh(const DoubleDouble& x) {
  const DoubleDouble e = exp(abs(x));
  return e + DoubleDouble(1.0) / e;
}

std::string to_string(const DoubleDouble& a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17g", a.hi(), a.lo());
  return buf;
}

double abs(const ComplexDD& z) { return std::hypot(z.re.to_double(), z.im.to_double()); }

ComplexDD ldexp(const ComplexDD& z, int e) { return {ldexp(z.re, e), ldexp(z.im, e)}; }

}  // namespace dd

ComplexDD operator/(const ComplexDD& a, const ComplexDD& b) {
  // Scale the denominator to unit magnitude first to keep the squared norm in range.
  const int shift = -std::ilogb(std::max(std::abs(b.re.hi()), std::abs(b.im.hi())) + 1e-300);
  const ComplexDD bs = dd::ldexp(b, shift);
  const DoubleDouble den = bs.re * bs.re + bs.im * bs.im;
  const ComplexDD num = a * ComplexDD{bs.re, -bs.im};
  return dd::ldexp(ComplexDD{num.re / den, num.im / den}, shift);
}

}  // namespace hatano

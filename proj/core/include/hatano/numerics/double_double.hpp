#pragma once

#include <cmath>
#include <compare>
#include <string>

namespace hatano {

/// Unevaluated sum hi + lo of two doubles with |lo| <= ulp(hi)/2, giving
/// roughly 31 significant decimal digits. Arithmetic follows the classic
/// Dekker/Knuth error-free transformations; every operation returns a
/// normalized value.
class DoubleDouble {
 public:
  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double x) : hi_(x), lo_(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(int x) : hi_(static_cast<double>(x)), lo_(0.0) {}

  /// Builds hi + lo and renormalizes.
  static DoubleDouble from_sum(double a, double b);
  /// Trusts the caller that (hi, lo) is already normalized.
  static constexpr DoubleDouble from_parts(double hi, double lo) {
    DoubleDouble r;
    r.hi_ = hi;
    r.lo_ = lo;
    return r;
  }

  constexpr double hi() const { return hi_; }
  constexpr double lo() const { return lo_; }
  constexpr double to_double() const { return hi_ + lo_; }
  explicit constexpr operator double() const { return hi_ + lo_; }

  DoubleDouble operator-() const { return from_parts(-hi_, -lo_); }

  DoubleDouble& operator+=(const DoubleDouble& b);
  DoubleDouble& operator-=(const DoubleDouble& b);
  DoubleDouble& operator*=(const DoubleDouble& b);
  DoubleDouble& operator/=(const DoubleDouble& b);

  friend DoubleDouble operator+(DoubleDouble a, const DoubleDouble& b) { return a += b; }
  friend DoubleDouble operator-(DoubleDouble a, const DoubleDouble& b) { return a -= b; }
  friend DoubleDouble operator*(DoubleDouble a, const DoubleDouble& b) { return a *= b; }
  friend DoubleDouble operator/(DoubleDouble a, const DoubleDouble& b) { return a /= b; }

  friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend std::partial_ordering operator<=>(const DoubleDouble& a, const DoubleDouble& b) {
    if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
    return a.lo_ <=> b.lo_;
  }

  bool is_normalized() const;

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
};

using DD = DoubleDouble;

namespace dd {

/// Error-free transformations.
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}
inline void quick_two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  e = b - (s - a);
}
inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

inline constexpr DoubleDouble kLn2 = DoubleDouble::from_parts(6.931471805599452862e-01, 2.319046813846299558e-17);
inline constexpr DoubleDouble kPi = DoubleDouble::from_parts(3.141592653589793116e+00, 1.224646799147353207e-16);
inline constexpr DoubleDouble kE = DoubleDouble::from_parts(2.718281828459045091e+00, 1.445646891729250158e-16);
/// Unit roundoff of the format, 2^-104.
inline constexpr double kEps = 4.93038065763132e-32;

DoubleDouble abs(const DoubleDouble& a);
DoubleDouble ldexp(const DoubleDouble& a, int e);
DoubleDouble sqrt(const DoubleDouble& a);
DoubleDouble exp(const DoubleDouble& a);
DoubleDouble log(const DoubleDouble& a);
/// 2 cosh(x), accurate to working precision for |x| <= 700.
DoubleDouble two_cosh(const DoubleDouble& x);
DoubleDouble square(const DoubleDouble& a);
int sign(const DoubleDouble& a);

/// "hi+lo" rendering with round-trip precision on both parts.
std::string to_string(const DoubleDouble& a);

}  // namespace dd

/// Complex number over DoubleDouble; only the operations the root
/// polishers need.
struct ComplexDD {
  DoubleDouble re;
  DoubleDouble im;

  ComplexDD() = default;
  ComplexDD(DoubleDouble r, DoubleDouble i = DoubleDouble{}) : re(r), im(i) {}

  ComplexDD& operator+=(const ComplexDD& b) { re += b.re; im += b.im; return *this; }
  ComplexDD& operator-=(const ComplexDD& b) { re -= b.re; im -= b.im; return *this; }
  friend ComplexDD operator+(ComplexDD a, const ComplexDD& b) { return a += b; }
  friend ComplexDD operator-(ComplexDD a, const ComplexDD& b) { return a -= b; }
  friend ComplexDD operator*(const ComplexDD& a, const ComplexDD& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexDD operator/(const ComplexDD& a, const ComplexDD& b);
  ComplexDD operator-() const { return {-re, -im}; }
};

inline ComplexDD conj(const ComplexDD& z) { return {z.re, -z.im}; }

namespace dd {
double abs(const ComplexDD& z);
ComplexDD ldexp(const ComplexDD& z, int e);
}  // namespace dd

}  // namespace hatano

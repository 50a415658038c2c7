#include "hatano/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hatano/errors.hpp"

namespace hatano {

namespace {

using Cd = std::complex<double>;

double mag(double x) { return std::abs(x); }
double mag(const DoubleDouble& x) { return std::abs(x.hi()); }
double mag(const Cd& z) { return std::max(std::abs(z.real()), std::abs(z.imag())); }
double mag(const ComplexDD& z) { return std::max(std::abs(z.re.hi()), std::abs(z.im.hi())); }

double scale(double x, int e) { return std::ldexp(x, e); }
DoubleDouble scale(const DoubleDouble& x, int e) { return dd::ldexp(x, e); }
Cd scale(const Cd& z, int e) { return {std::ldexp(z.real(), e), std::ldexp(z.imag(), e)}; }
ComplexDD scale(const ComplexDD& z, int e) { return dd::ldexp(z, e); }

template <class T>
T lift(double x) {
  if constexpr (std::is_same_v<T, ComplexDD>) {
    return ComplexDD(DoubleDouble(x));
  } else {
    return T(x);
  }
}

constexpr double kRescaleAbove = 0x1p+256;

template <class T>
TraceJet<T> jet_impl(std::span<const double> v, const T& E, int order) {
  // index 0: current, 1: previous
  T x0 = lift<T>(1.0), x1 = lift<T>(0.0), y0 = lift<T>(0.0), y1 = lift<T>(1.0);
  T dx0{}, dx1{}, dy0{}, dy1{}, ex0{}, ex1{}, ey0{}, ey1{};
  int exp2 = 0;
  for (double vk : v) {
    const T a = E - lift<T>(vk);
    if (order >= 2) {
      T ex = (dx0 + dx0) + a * ex0 - ex1;
      T ey = (dy0 + dy0) + a * ey0 - ey1;
      ex1 = ex0;
      ex0 = ex;
      ey1 = ey0;
      ey0 = ey;
    }
    if (order >= 1) {
      T dx = x0 + a * dx0 - dx1;
      T dy = y0 + a * dy0 - dy1;
      dx1 = dx0;
      dx0 = dx;
      dy1 = dy0;
      dy0 = dy;
    }
    T x = a * x0 - x1;
    T y = a * y0 - y1;
    x1 = x0;
    x0 = x;
    y1 = y0;
    y0 = y;

    double big = std::max({mag(x0), mag(x1), mag(y0), mag(y1)});
    if (order >= 1) big = std::max({big, mag(dx0), mag(dx1), mag(dy0), mag(dy1)});
    if (order >= 2) big = std::max({big, mag(ex0), mag(ex1), mag(ey0), mag(ey1)});
    if (big > kRescaleAbove) {
      int e = 0;
      std::frexp(big, &e);
      for (T* p : {&x0, &x1, &y0, &y1, &dx0, &dx1, &dy0, &dy1, &ex0, &ex1, &ey0, &ey1}) *p = scale(*p, -e);
      exp2 += e;
    }
  }
  TraceJet<T> out;
  out.value = x0 + y1;
  if (order >= 1) out.d1 = dx0 + dy1;
  if (order >= 2) out.d2 = ex0 + ey1;
  out.exp2 = exp2;
  return out;
}

void check_order(int order) {
  if (order < 0 || order > 2) throw InvalidArgument("trace_jet: order must be 0, 1 or 2");
}

}  // namespace

TraceJet<double> trace_jet(std::span<const double> v, double E, int order) {
  check_order(order);
  return jet_impl<double>(v, E, order);
}
TraceJet<DoubleDouble> trace_jet(std::span<const double> v, const DoubleDouble& E, int order) {
  check_order(order);
  return jet_impl<DoubleDouble>(v, E, order);
}
TraceJet<Cd> trace_jet(std::span<const double> v, Cd z, int order) {
  check_order(order);
  return jet_impl<Cd>(v, z, order);
}
TraceJet<ComplexDD> trace_jet(std::span<const double> v, const ComplexDD& z, int order) {
  check_order(order);
  return jet_impl<ComplexDD>(v, z, order);
}

ScaledReal to_scaled(double value, int exp2) {
  const ScaledReal s = ScaledReal::from_double(value);
  return s.is_zero() ? s : ScaledReal::from_log(s.sign, s.logmag + exp2 * std::numbers::ln2);
}

ScaledReal to_scaled(const DoubleDouble& value, int exp2) {
  const ScaledReal s = ScaledReal::from_dd(value);
  return s.is_zero() ? s : ScaledReal::from_log(s.sign, s.logmag + exp2 * std::numbers::ln2);
}

ScaledReal disc_shifted(std::span<const double> v, const DoubleDouble& E, Precision precision, int order,
                        const DoubleDouble& shift) {
  if (precision == Precision::standard) {
    const auto j = trace_jet(v, E.to_double(), order);
    const double x = order == 0 ? j.value : order == 1 ? j.d1 : j.d2;
    return to_scaled(x - std::ldexp(shift.to_double(), -j.exp2), j.exp2);
  }
  const auto j = trace_jet(v, E, order);
  const DoubleDouble& x = order == 0 ? j.value : order == 1 ? j.d1 : j.d2;
  return to_scaled(x - dd::ldexp(shift, -j.exp2), j.exp2);
}

DiscriminantEval eval_disc(const PotentialSample& sample, double E, Precision precision) {
  DiscriminantEval out;
  out.energy = E;
  out.value = disc_shifted(sample.values, E, precision, 0);
  return out;
}

DiscriminantEval eval_disc_deriv(const PotentialSample& sample, double E, Precision precision) {
  DiscriminantEval out;
  out.energy = E;
  if (precision == Precision::standard) {
    const auto j = trace_jet(sample.values, E, 1);
    out.value = to_scaled(j.value, j.exp2);
    out.derivative = to_scaled(j.d1, j.exp2);
  } else {
    const auto j = trace_jet(sample.values, DoubleDouble(E), 1);
    out.value = to_scaled(j.value, j.exp2);
    out.derivative = to_scaled(j.d1, j.exp2);
  }
  return out;
}

DoubleDouble DiscCoeffs::eval(const DoubleDouble& E) const {
  DoubleDouble p(0.0);
  for (std::size_t k = coefficients.size(); k-- > 0;) p = p * E + coefficients[k];
  return p;
}

DiscCoeffs DiscCoeffs::derivative() const {
  DiscCoeffs d;
  for (std::size_t k = 1; k < coefficients.size(); ++k)
    d.coefficients.push_back(coefficients[k] * DoubleDouble(static_cast<double>(k)));
  if (d.coefficients.empty()) d.coefficients.emplace_back(0.0);
  return d;
}

DiscCoeffs disc_coeffs(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n > kMaxCoeffDegree)
    throw CapabilityExceeded("disc_coeffs: n = " + std::to_string(n) + " exceeds the coefficient path limit " +
                             std::to_string(kMaxCoeffDegree));
  using Poly = std::vector<DoubleDouble>;
  // x_k = (E - v_k) x_{k-1} - x_{k-2}, polynomials of degree k.
  auto advance = [](const Poly& cur, const Poly& prev, double vk) {
    Poly next(cur.size() + 1, DoubleDouble(0.0));
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i + 1] += cur[i];
      next[i] -= cur[i] * DoubleDouble(vk);
    }
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    return next;
  };
  Poly x0{DoubleDouble(1.0)}, x1{DoubleDouble(0.0)};
  Poly y0{DoubleDouble(0.0)}, y1{DoubleDouble(1.0)};
  for (double vk : v) {
    Poly x = advance(x0, x1, vk);
    Poly y = advance(y0, y1, vk);
    x1 = std::move(x0);
    x0 = std::move(x);
    y1 = std::move(y0);
    y0 = std::move(y);
  }
  DiscCoeffs out;
  out.coefficients = x0;
  for (std::size_t i = 0; i < y1.size() && i < out.coefficients.size(); ++i) out.coefficients[i] += y1[i];
  return out;
}

DiscCoeffs disc_coeffs(const PotentialSample& sample) { return disc_coeffs(sample.values); }

double chebyshev_disc(int n, double E) {
  if (n < 0) throw InvalidArgument("chebyshev_disc: n must be nonnegative");
  if (n == 0) return 2.0;
  double prev = 2.0, cur = E;
  for (int k = 2; k <= n; ++k) {
    const double next = E * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace hatano

#include "hatano/numerics/roots.hpp"

#include <algorithm>
#include <cfloat>
#include <cstdio>
#include <string>

#include "hatano/errors.hpp"

namespace hatano {

std::string_view to_string(Precision p) {
  return p == Precision::standard ? "standard" : "extended";
}

Precision precision_from_string(std::string_view s) {
  if (s == "standard") return Precision::standard;
  if (s == "extended") return Precision::extended;
  throw InvalidArgument("unknown precision '" + std::string(s) + "'");
}

Bracket Bracket::make(const RealFunction& f, DoubleDouble lo, DoubleDouble hi) {
  Bracket b{lo, hi, f(lo).sign, f(hi).sign};
  b.validate();
  return b;
}

void Bracket::validate() const {
  if (!(lo < hi)) throw BracketInvalid("bracket requires lo < hi, got [" + dd::to_string(lo) + ", " + dd::to_string(hi) + "]");
  if (f_lo_sign == 0 || f_hi_sign == 0 || f_lo_sign == f_hi_sign)
    throw BracketInvalid("function signs at bracket ends do not differ (" + std::to_string(f_lo_sign) + ", " +
                         std::to_string(f_hi_sign) + ")");
}

double min_tolerance(Precision p, double scale) {
  const double s = std::max(1.0, std::abs(scale));
  return p == Precision::standard ? 2.0 * DBL_EPSILON * s : 1e-28 * s;
}

namespace {

DoubleDouble round_to(Precision p, const DoubleDouble& x) {
  return p == Precision::standard ? DoubleDouble(x.hi()) : x;
}

DoubleDouble midpoint(Precision p, const DoubleDouble& a, const DoubleDouble& b) {
  return round_to(p, a + dd::ldexp(b - a, -1));
}

}  // namespace

DoubleDouble refine_root(const RealFunction& f, const Bracket& bracket, double tol_abs, Precision precision,
                         bool secant) {
  bracket.validate();
  const double scale = std::max(std::abs(bracket.lo.hi()), std::abs(bracket.hi.hi()));
  if (!(tol_abs >= min_tolerance(precision, scale))) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "tolerance %.3g below %s capability %.3g", tol_abs,
                  std::string(to_string(precision)).c_str(), min_tolerance(precision, scale));
    throw ToleranceUnreachable(msg);
  }

  DoubleDouble a = round_to(precision, bracket.lo);
  DoubleDouble b = round_to(precision, bracket.hi);
  const int sign_a = bracket.f_lo_sign;

  ScaledReal fa, fb;
  if (secant) {
    fa = f(a);
    fb = f(b);
    if (fa.sign == 0) return a;
    if (fb.sign == 0) return b;
  }

  int bisections = 0;
  int last_side = 0;
  int accelerated_run = 0;
  bool force_bisect = false;
  DoubleDouble width_ref = b - a;

  while ((b - a).hi() > tol_abs) {
    const DoubleDouble w = b - a;
    const bool bisect = !secant || force_bisect || !std::isfinite(fa.logmag) || !std::isfinite(fb.logmag);
    DoubleDouble x;
    if (bisect) {
      x = midpoint(precision, a, b);
      if (++bisections > kMaxBisections)
        throw NoConvergence("refine_root: bisection budget exhausted at width " + dd::to_string(w));
    } else {
      const double r = 1.0 / (1.0 + std::exp(fb.logmag - fa.logmag));
      const DoubleDouble min_step(std::min(0.5 * tol_abs, 0.25 * w.to_double()));
      const DoubleDouble step = DoubleDouble(r) * w;
      if (step < min_step)
        x = round_to(precision, a + min_step);
      else if (step > w - min_step)
        x = round_to(precision, b - min_step);
      else
        x = round_to(precision, a + step);
      if (!(a < x && x < b)) {
        force_bisect = true;
        continue;
      }
    }
    if (!(a < x && x < b)) break;  // working resolution exhausted

    const ScaledReal fx = f(x);
    if (fx.sign == 0) return x;
    int side;
    if (fx.sign == sign_a) {
      a = x;
      fa = fx;
      side = -1;
    } else {
      b = x;
      fb = fx;
      side = +1;
    }
    // Illinois: the endpoint that survived twice in a row has its weight halved.
    if (side == last_side) {
      if (side < 0)
        fb.logmag -= dd::kLn2.hi();
      else
        fa.logmag -= dd::kLn2.hi();
    }
    last_side = side;

    if (bisect) {
      force_bisect = false;
      accelerated_run = 0;
      width_ref = b - a;
    } else if (++accelerated_run == 2) {
      force_bisect = (b - a) > dd::ldexp(width_ref, -1);
      width_ref = b - a;
      accelerated_run = 0;
    }
  }
  return midpoint(precision, a, b);
}

DoubleDouble find_root(const RealFunction& f, DoubleDouble lo, DoubleDouble hi, double tol_abs, Precision precision,
                       bool secant) {
  const int s_lo = f(lo).sign;
  if (s_lo == 0) return lo;
  const int s_hi = f(hi).sign;
  if (s_hi == 0) return hi;
  return refine_root(f, Bracket{lo, hi, s_lo, s_hi}, tol_abs, precision, secant);
}

}  // namespace hatano

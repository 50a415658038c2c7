#include "hatano/numerics/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hatano/errors.hpp"

namespace hatano {

namespace {

double mag(const ComplexDD& z) { return dd::abs(z); }
bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
bool finite(const ComplexDD& z) { return std::isfinite(z.re.hi()) && std::isfinite(z.im.hi()); }

template <class C>
C reciprocal(const C& z) {
  return C(1.0) / z;
}

/// Sum of 1/(z_i - w) over all other roots (free, mirrored, fixed).
template <class C>
C repulsion(std::size_t i, const std::vector<C>& z, std::span<const C> fixed, bool mirror) {
  using std::conj;
  C s(0.0);
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (k != i) s += reciprocal<C>(z[i] - z[k]);
    if (mirror) s += reciprocal<C>(z[i] - conj(z[k]));
  }
  for (const C& f : fixed) s += reciprocal<C>(z[i] - f);
  return s;
}

template <class C>
C reflect_up(const C& z) {
  using std::conj;
  if constexpr (std::is_same_v<C, Complex>) {
    return z.imag() < 0.0 ? conj(z) : z;
  } else {
    return z.im.hi() < 0.0 ? conj(z) : z;
  }
}

}  // namespace

AberthResult aberth(const NewtonStep& step, std::vector<Complex> z, std::span<const Complex> fixed,
                    const AberthOptions& opts) {
  AberthResult out;
  std::vector<bool> done(z.size(), false);
  std::size_t remaining = z.size();
  int it = 0;
  for (; it < opts.max_iter && remaining > 0; ++it) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      const Complex w = step(z[i]);
      if (!finite(w)) {
        // Landed on a pole of the correction (p' = 0): nudge off it.
        z[i] += Complex(1e-7, 1e-7) * std::max(1.0, std::abs(z[i]));
        continue;
      }
      const Complex s = repulsion<Complex>(i, z, fixed, opts.mirror);
      Complex corr = w / (1.0 - w * s);
      if (!finite(corr)) corr = w;
      z[i] -= corr;
      if (opts.mirror) z[i] = reflect_up(z[i]);
      if (std::abs(corr) <= opts.tol * std::max(std::abs(z[i]), 1e-3)) {
        done[i] = true;
        --remaining;
      }
    }
  }
  out.roots = std::move(z);
  out.iterations = it;
  out.converged = remaining == 0;
  return out;
}

std::vector<ComplexDD> aberth_dd(const NewtonStepDD& step, std::vector<ComplexDD> z, std::span<const ComplexDD> fixed,
                                 int iterations, bool mirror) {
  std::vector<bool> done(z.size(), false);
  for (int it = 0; it < iterations; ++it) {
    bool any = false;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      const ComplexDD w = step(z[i]);
      if (!finite(w)) continue;
      const ComplexDD s = repulsion<ComplexDD>(i, z, fixed, mirror);
      ComplexDD corr = w / (ComplexDD(1.0) - w * s);
      if (!finite(corr)) corr = w;
      z[i] -= corr;
      if (mirror) z[i] = reflect_up(z[i]);
      if (mag(corr) <= 1e-30 * std::max(mag(z[i]), 1e-3))
        done[i] = true;
      else
        any = true;
    }
    if (!any) break;
  }
  return z;
}

void horner(std::span<const DoubleDouble> coeffs, const ComplexDD& z, ComplexDD& p, ComplexDD& dp) {
  p = ComplexDD(coeffs.back());
  dp = ComplexDD(0.0);
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + ComplexDD(coeffs[k]);
  }
}

double horner_scale(std::span<const DoubleDouble> coeffs, double abs_z) {
  double s = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) s = s * abs_z + std::abs(coeffs[k].to_double());
  return s;
}

std::vector<Complex> poly_roots(std::span<const DoubleDouble> coeffs, double tol) {
  if (coeffs.size() < 2) throw InvalidArgument("poly_roots: degree must be >= 1");
  if (coeffs.back().hi() == 0.0) throw InvalidArgument("poly_roots: leading coefficient is zero");
  const std::size_t deg = coeffs.size() - 1;
  const double lead = coeffs.back().to_double();

  std::vector<Complex> a(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) a[k] = coeffs[k].to_double() / lead;

  const NewtonStep step = [&a](Complex z) {
    Complex p = a.back(), dp = 0.0;
    for (std::size_t k = a.size() - 1; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + a[k];
    }
    return p / dp;
  };

  // Initial guesses on a circle around the root centroid whose radius is the
  // geometric mean of the root distances from it.
  const Complex centre = -a[deg - 1] / static_cast<double>(deg);
  Complex pc = a.back();
  for (std::size_t k = a.size() - 1; k-- > 0;) pc = pc * centre + a[k];
  double radius = std::pow(std::abs(pc), 1.0 / static_cast<double>(deg));
  if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;
  std::vector<Complex> init(deg);
  for (std::size_t k = 0; k < deg; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(deg) + 0.4;
    init[k] = centre + std::polar(radius, theta);
  }

  AberthOptions opts;
  opts.tol = 1e-14;
  const AberthResult res = aberth(step, std::move(init), {}, opts);

  const NewtonStepDD step_dd = [coeffs](const ComplexDD& z) {
    ComplexDD p, dp;
    horner(coeffs, z, p, dp);
    return p / dp;
  };
  std::vector<ComplexDD> zdd(deg);
  for (std::size_t k = 0; k < deg; ++k) zdd[k] = ComplexDD(res.roots[k].real(), res.roots[k].imag());
  zdd = aberth_dd(step_dd, std::move(zdd), {}, 12, false);

  std::vector<Complex> roots(deg);
  for (std::size_t k = 0; k < deg; ++k) roots[k] = Complex(zdd[k].re.to_double(), zdd[k].im.to_double());

  // Enforce conjugate symmetry: pair each upper root with the nearest lower
  // one; whatever cannot be paired is real.
  std::vector<std::size_t> upper, lower;
  for (std::size_t k = 0; k < deg; ++k) (roots[k].imag() >= 0.0 ? upper : lower).push_back(k);
  std::sort(upper.begin(), upper.end(), [&](auto x, auto y) { return roots[x].imag() > roots[y].imag(); });
  std::vector<bool> used(deg, false);
  std::vector<ComplexDD> sym_dd;
  sym_dd.reserve(deg);
  for (std::size_t u : upper) {
    std::size_t best = deg;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t l : lower) {
      if (used[l]) continue;
      const double d = std::abs(roots[u] - std::conj(roots[l]));
      if (d < best_d) {
        best_d = d;
        best = l;
      }
    }
    if (best < deg && best_d <= std::abs(roots[u].imag())) {
      used[best] = true;
      const ComplexDD m{dd::ldexp(zdd[u].re + zdd[best].re, -1), dd::ldexp(zdd[u].im - zdd[best].im, -1)};
      sym_dd.push_back(m);
      sym_dd.push_back(conj(m));
    } else {
      sym_dd.emplace_back(zdd[u].re);
    }
  }
  for (std::size_t l : lower)
    if (!used[l]) sym_dd.emplace_back(zdd[l].re);

  double worst = 0.0;
  std::vector<Complex> sym;
  sym.reserve(deg);
  for (const ComplexDD& z : sym_dd) {
    ComplexDD p, dp;
    horner(coeffs, z, p, dp);
    const double rel = dd::abs(p) / horner_scale(coeffs, dd::abs(z));
    worst = std::max(worst, rel);
    sym.emplace_back(z.re.to_double(), z.im.to_double());
  }
  if (!(worst <= tol))
    throw NoConvergence("poly_roots: worst relative residual " + std::to_string(worst) + " after " +
                        std::to_string(res.iterations) + " iterations");
  sort_complex(sym);
  return sym;
}

double hausdorff(std::span<const Complex> a, std::span<const Complex> b) {
  auto directed = [](std::span<const Complex> x, std::span<const Complex> y) {
    double h = 0.0;
    for (const Complex& p : x) {
      double m = std::numeric_limits<double>::infinity();
      for (const Complex& q : y) m = std::min(m, std::abs(p - q));
      h = std::max(h, m);
    }
    return h;
  };
  return std::max(directed(a, b), directed(b, a));
}

void sort_complex(std::vector<Complex>& zs) {
  std::sort(zs.begin(), zs.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
}

}  // namespace hatano

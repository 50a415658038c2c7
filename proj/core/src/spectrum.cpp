#include "hatano/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "hatano/csv.hpp"
#include "hatano/errors.hpp"

namespace hatano {

SpectralParams SpectralParams::make(double g, std::size_t n) {
  if (!std::isfinite(g) || g < 0.0) throw InvalidArgument("non-Hermiticity g must be finite and >= 0");
  if (n == 0) throw InvalidArgument("ring length must be positive");
  const double ng = static_cast<double>(n) * g;
  if (ng > 700.0) throw InvalidArgument("n * g = " + std::to_string(ng) + " exceeds 700");
  return {g, n, ScaledReal::from_log(1, log_two_cosh(ng))};
}

DoubleDouble SpectralParams::target_dd() const {
  return dd::two_cosh(DoubleDouble(g) * DoubleDouble(static_cast<double>(n)));
}

std::size_t SpectrumResult::real_count() const { return static_cast<std::size_t>(std::count(is_real.begin(), is_real.end(), true)); }

namespace {

struct Entry {
  ComplexDD z;
  bool real;
  int index;
};

SpectrumResult assemble(double g, std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.z.re != b.z.re) return a.z.re < b.z.re;
    return a.z.im < b.z.im;
  });
  SpectrumResult r;
  r.g = g;
  for (const Entry& e : entries) {
    r.eigenvalues.emplace_back(e.z.re.to_double(), e.z.im.to_double());
    r.eigenvalues_dd.push_back(e.z);
    r.is_real.push_back(e.real);
    r.index_map.push_back(e.real ? e.index : -1);
  }
  return r;
}

std::string format_complex(const ComplexDD& z) {
  return format_double(z.re.to_double()) + (z.im.hi() < 0 ? "" : "+") + format_double(z.im.to_double()) + "i";
}

double tolerance_for(Precision p, const DoubleDouble& a, const DoubleDouble& b) {
  return 2.0 * min_tolerance(p, std::max(std::abs(a.hi()), std::abs(b.hi())));
}

}  // namespace

SpectrumResult eigvals_hermitian(const BandStructure& bs) {
  std::vector<Entry> entries;
  for (std::size_t j = 0; j < bs.n; ++j) entries.push_back({ComplexDD(bs.eigenvalues[j]), true, static_cast<int>(j)});
  return assemble(0.0, std::move(entries));
}

SpectrumResult eigvals_hermitian(const PotentialSample& sample, Precision precision) {
  return eigvals_hermitian(band_structure(sample, precision));
}

std::optional<DoubleDouble> real_eigenvalue(const PotentialSample& sample, const BandStructure& bs, std::size_t j,
                                            const DoubleDouble& target, const std::optional<DoubleDouble>& start) {
  const DoubleDouble lam0 = bs.eigenvalues[j];
  if (target <= DoubleDouble(2.0)) return lam0;
  const std::span<const double> v = sample.values;
  const Precision p = bs.precision;
  const RealFunction f = [&](const DoubleDouble& E) { return disc_shifted(v, E, p, 0, target); };

  if (f(lam0).sign >= 0) return lam0;
  DoubleDouble from = lam0;
  const int dir = bs.direction[j];
  if (start) {
    const bool ahead = dir > 0 ? *start >= lam0 : *start <= lam0;
    if (ahead && f(*start).sign < 0) from = *start;
  }

  DoubleDouble to;
  if (const auto tp = bs.positive_end(j)) {
    to = bs.turning_points[*tp];
    if (bs.touching[*tp]) return std::nullopt;
    const int s = f(to).sign;
    if (s < 0) return std::nullopt;
    if (s == 0) return to;
  } else {
    to = DoubleDouble(dir > 0 ? bs.k.hi : bs.k.lo);
    for (int it = 0; f(to).sign < 0; ++it) {
      if (it > 1100) throw NoConvergence("outer eigenvalue " + std::to_string(j + 1) + " could not be bracketed");
      to = lam0 + dd::ldexp(to - lam0, 1);
    }
  }
  const DoubleDouble lo = dir > 0 ? from : to;
  const DoubleDouble hi = dir > 0 ? to : from;
  if (!(lo < hi)) return from;
  return find_root(f, lo, hi, tolerance_for(p, lo, hi), p);
}

double level_residual(std::span<const double> v, const ComplexDD& z, double log_target) {
  const auto jet = trace_jet(v, z, 0);
  const double m = dd::abs(jet.value);
  if (!(m > 0.0)) return std::numeric_limits<double>::infinity();
  return std::abs(std::log(m) + jet.exp2 * std::numbers::ln2 - log_target);
}

Complex pair_guess(const PotentialSample& sample, const BandStructure& bs, std::size_t tp, double g) {
  const double e = bs.turning_points[tp].to_double();
  const double n = static_cast<double>(bs.n);
  const double log_target = log_two_cosh(n * g);
  const auto jet = trace_jet(sample.values, e, 2);
  const double d2 = std::abs(jet.d2);
  // log(T - D) with D = Delta_n(E') < T.
  const double log_d = bs.tp_logmag[tp];
  const double gap = log_target + std::log1p(-std::exp(std::min(0.0, log_d - log_target)));
  double h = std::numeric_limits<double>::infinity();
  if (d2 > 0.0) h = std::exp(0.5 * (std::numbers::ln2 + gap - std::log(d2) - jet.exp2 * std::numbers::ln2));
  const double cap = 2.0 * std::sinh(g);
  if (!(h <= cap)) h = cap;
  if (!(h > 0.0)) h = 1e-6;
  return {e, h};
}

std::vector<ComplexDD> solve_pairs(const PotentialSample& sample, const DoubleDouble& target,
                                   std::span<const DoubleDouble> real_roots, std::vector<Complex> guesses) {
  if (guesses.empty()) return {};
  const std::span<const double> v = sample.values;
  const double t = target.to_double();
  const NewtonStep step = [v, t](Complex z) {
    const auto jet = trace_jet(v, z, 1);
    return (jet.value - std::ldexp(t, -jet.exp2)) / jet.d1;
  };
  std::vector<Complex> fixed;
  std::vector<ComplexDD> fixed_dd;
  for (const DoubleDouble& r : real_roots) {
    fixed.emplace_back(r.to_double(), 0.0);
    fixed_dd.emplace_back(r);
  }
  AberthOptions opts;
  opts.mirror = true;
  opts.tol = 1e-14;
  const AberthResult res = aberth(step, std::move(guesses), fixed, opts);

  const NewtonStepDD step_dd = [v, target](const ComplexDD& z) {
    const auto jet = trace_jet(v, z, 1);
    return (jet.value - ComplexDD(dd::ldexp(target, -jet.exp2))) / jet.d1;
  };
  std::vector<ComplexDD> z(res.roots.size());
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = ComplexDD(res.roots[k].real(), res.roots[k].imag());
  z = aberth_dd(step_dd, std::move(z), fixed_dd, 3, true);

  const double log_target = std::log(t);
  for (const ComplexDD& w : z) {
    const double r = level_residual(v, w, log_target);
    if (!(r <= 1e-8))
      throw NoConvergence("complex eigenvalue " + format_complex(w) + " has level residual " + std::to_string(r) +
                          " after " + std::to_string(res.iterations) + " Aberth iterations");
  }
  return z;
}

SpectrumResult eigvals_g(const PotentialSample& sample, const BandStructure& bs, const SpectralParams& params) {
  if (params.g == 0.0) return eigvals_hermitian(bs);
  const std::size_t n = bs.n;
  const DoubleDouble target = params.target_dd();

  std::vector<std::optional<DoubleDouble>> real(n);
  for (std::size_t j = 0; j < n; ++j) real[j] = real_eigenvalue(sample, bs, j, target);

  std::vector<std::size_t> pair_tps;
  for (std::size_t j = 0; j < n; ++j) {
    if (real[j]) continue;
    const auto tp = bs.positive_end(j);
    if (!tp) throw CountMismatch("outer eigenvalue " + std::to_string(j + 1) + " lost without a turning point");
    const std::size_t other = *tp == j ? j + 1 : j - 1;
    if (real[other])
      throw CountMismatch("eigenvalue " + std::to_string(j + 1) + " left the axis at turning point " +
                          std::to_string(*tp + 1) + " without a partner");
    if (*tp == j) pair_tps.push_back(*tp);
  }

  std::vector<DoubleDouble> reals;
  std::vector<Entry> entries;
  for (std::size_t j = 0; j < n; ++j)
    if (real[j]) {
      reals.push_back(*real[j]);
      entries.push_back({ComplexDD(*real[j]), true, static_cast<int>(j)});
    }
  std::vector<Complex> guesses;
  for (std::size_t tp : pair_tps) guesses.push_back(pair_guess(sample, bs, tp, params.g));
  const std::vector<ComplexDD> upper = solve_pairs(sample, target, reals, std::move(guesses));
  for (const ComplexDD& z : upper) {
    entries.push_back({z, false, -1});
    entries.push_back({conj(z), false, -1});
  }
  if (entries.size() != n)
    throw CountMismatch("found " + std::to_string(reals.size()) + " real and " + std::to_string(2 * upper.size()) +
                        " non-real eigenvalues for n = " + std::to_string(n));
  return assemble(params.g, std::move(entries));
}

SpectrumResult eigvals_g(const PotentialSample& sample, const SpectralParams& params, Precision precision) {
  return eigvals_g(sample, band_structure(sample, precision), params);
}

DiscCoeffs charpoly_oracle(const PotentialSample& sample, double g) {
  const std::size_t n = sample.values.size();
  if (n > kMaxOracleSize)
    throw CapabilityExceeded("charpoly_oracle: n = " + std::to_string(n) + " exceeds " +
                             std::to_string(kMaxOracleSize));
  if (n == 0) throw InvalidArgument("charpoly_oracle: empty potential");
  const DoubleDouble up = dd::exp(DoubleDouble(g));
  const DoubleDouble down = DoubleDouble(1.0) / up;
  std::vector<std::vector<DoubleDouble>> h(n, std::vector<DoubleDouble>(n, DoubleDouble(0.0)));
  for (std::size_t k = 0; k < n; ++k) {
    h[k][(k + n - 1) % n] += down;
    h[k][(k + 1) % n] += up;
  }
  if (n == 1) h[0][0] = DoubleDouble(0.0);

  using Poly = std::vector<DoubleDouble>;
  const std::size_t full = std::size_t{1} << n;
  std::vector<Poly> f(full);
  f[0] = Poly{DoubleDouble(1.0)};
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (f[mask].empty()) continue;
    const auto r = static_cast<std::size_t>(std::popcount(mask));
    if (r == n) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (mask & (std::size_t{1} << c)) continue;
      const std::size_t above = mask >> (c + 1);
      const bool negative = std::popcount(above) % 2 == 1;
      Poly& dst = f[mask | (std::size_t{1} << c)];
      if (dst.empty()) dst.assign(n + 1, DoubleDouble(0.0));
      const Poly& src = f[mask];
      if (c == r) {
        // entry z - v_r - h_rr
        const DoubleDouble shift = DoubleDouble(sample.values[r]) + h[r][r];
        for (std::size_t i = 0; i < src.size(); ++i) {
          const DoubleDouble hi_term = negative ? -src[i] : src[i];
          if (i + 1 <= n) dst[i + 1] += hi_term;
          dst[i] -= hi_term * shift;
        }
      } else if (!(h[r][c] == DoubleDouble(0.0))) {
        const DoubleDouble entry = -h[r][c];
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] += (negative ? -src[i] : src[i]) * entry;
      }
    }
  }
  DiscCoeffs out;
  out.coefficients = f[full - 1];
  out.coefficients.resize(n + 1, DoubleDouble(0.0));
  return out;
}

double critical_g(const BandStructure& bs, std::size_t j) {
  const auto tp = bs.positive_end(j);
  if (!tp) return std::numeric_limits<double>::infinity();
  if (bs.touching[*tp]) return 0.0;
  const double log_half = bs.tp_logmag[*tp] - std::numbers::ln2;
  if (!(log_half > 0.0)) return 0.0;
  return acosh_from_log(log_half) / static_cast<double>(bs.n);
}

std::vector<double> critical_gs(const BandStructure& bs) {
  std::vector<double> out(bs.n);
  for (std::size_t j = 0; j < bs.n; ++j) out[j] = critical_g(bs, j);
  return out;
}

}  // namespace hatano

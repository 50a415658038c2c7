#include "hatano/bands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hatano/csv.hpp"
#include "hatano/discriminant.hpp"
#include "hatano/errors.hpp"

namespace hatano {

Interval spectral_interval(double bound) { return {-3.0 - bound, 3.0 + bound}; }

Interval spectral_interval(const PotentialSample& sample) {
  double bound = sample.spec.bound();
  for (double v : sample.values) bound = std::max(bound, std::abs(v));
  return spectral_interval(bound);
}

std::vector<double> floquet_eigenvalues(std::span<const double> v, double theta) {
  const auto n = static_cast<Eigen::Index>(v.size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) h(k, k) = v[static_cast<std::size_t>(k)];
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    h(k, k + 1) += 1.0;
    h(k + 1, k) += 1.0;
  }
  const std::complex<double> phase = std::polar(1.0, theta);
  h(n - 1, 0) += phase;
  h(0, n - 1) += std::conj(phase);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw StructureViolation("Floquet eigenproblem failed to converge");
  std::vector<double> r(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) r[k] = solver.eigenvalues()[static_cast<Eigen::Index>(k)];
  std::sort(r.begin(), r.end());
  return r;
}

double refine_tolerance(Precision precision, const Interval& k) {
  return 2.0 * min_tolerance(precision, std::max(std::abs(k.lo), std::abs(k.hi)));
}

double touch_tolerance(Precision precision, std::size_t n) {
  return (precision == Precision::standard ? 1e-12 : 1e-26) * static_cast<double>(n);
}

std::optional<std::size_t> BandStructure::positive_end(std::size_t j) const {
  if (direction[j] > 0) {
    if (j + 1 < n) return j;
    return std::nullopt;
  }
  if (j > 0) return j - 1;
  return std::nullopt;
}

DoubleDouble BandStructure::stretch_lo(std::size_t j) const { return j == 0 ? DoubleDouble(k.lo) : turning_points[j - 1]; }

DoubleDouble BandStructure::stretch_hi(std::size_t j) const {
  return j + 1 == n ? DoubleDouble(k.hi) : turning_points[j];
}

namespace {

int expected_sign(std::size_t n, std::size_t j) {
  // sign of Delta_n just right of root j (0-based): (-1)^(n-1-j)
  return ((n - 1 - j) % 2 == 0) ? 1 : -1;
}

std::vector<double> twisted_roots(std::span<const double> v) { return floquet_eigenvalues(v, std::numbers::pi / 2); }

std::string describe(const DoubleDouble& x) { return format_double(x.to_double()); }

}  // namespace

BandStructure band_structure(const PotentialSample& sample, Precision precision) {
  const std::size_t n = sample.values.size();
  if (n < 2) throw InvalidArgument("band_structure: ring length must be at least 2");
  const std::span<const double> v = sample.values;

  BandStructure bs;
  bs.n = n;
  bs.precision = precision;
  bs.k = spectral_interval(sample);
  const double tol = refine_tolerance(precision, bs.k);
  const double touch = touch_tolerance(precision, n);

  const RealFunction disc = [&](const DoubleDouble& E) { return disc_shifted(v, E, precision, 0); };
  const RealFunction slope = [&](const DoubleDouble& E) { return disc_shifted(v, E, precision, 1); };

  // Roots: sign pattern at the separating points, then bracketed refinement.
  const std::vector<double> approx = twisted_roots(v);
  std::vector<DoubleDouble> sep(n + 1);
  sep[0] = bs.k.lo;
  sep[n] = bs.k.hi;
  for (std::size_t j = 0; j + 1 < n; ++j) sep[j + 1] = DoubleDouble(0.5 * (approx[j] + approx[j + 1]));
  for (std::size_t j = 0; j <= n; ++j) {
    const int want = j == 0 ? -expected_sign(n, 0) : expected_sign(n, j - 1);
    if (disc(sep[j]).sign != want)
      throw StructureViolation("root separation failed near E = " + describe(sep[j]) + " (sign of Delta_n is " +
                               std::to_string(disc(sep[j]).sign) + ", expected " + std::to_string(want) + ")");
  }
  bs.roots.resize(n);
  for (std::size_t j = 0; j < n; ++j) bs.roots[j] = find_root(disc, sep[j], sep[j + 1], tol, precision);

  // Turning points between consecutive roots.
  bs.turning_points.resize(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    try {
      bs.turning_points[j] = find_root(slope, bs.roots[j], bs.roots[j + 1], tol, precision);
    } catch (const BracketInvalid& e) {
      throw StructureViolation("no sign change of Delta_n' between roots " + std::to_string(j + 1) + " and " +
                               std::to_string(j + 2) + ": " + e.what());
    }
    if (!(bs.turning_points[j] > bs.roots[j] && bs.turning_points[j] < bs.roots[j + 1]))
      throw StructureViolation("turning point " + std::to_string(j + 1) + " does not interlace the roots");
  }

  bs.tp_values.resize(n - 1);
  bs.tp_logmag.resize(n - 1);
  bs.touching.resize(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const ScaledReal d = disc(bs.turning_points[j]);
    bs.tp_values[j] = d;
    bs.tp_logmag[j] = d.logmag;
    if (d.sign != expected_sign(n, j))
      throw StructureViolation("Delta_n has the wrong sign at turning point " + std::to_string(j + 1));
    const double excess = std::abs(d.to_double()) - 2.0;
    if (excess < -touch)
      throw StructureViolation("|Delta_n| = " + format_double(std::abs(d.to_double())) +
                               " < 2 at turning point E' = " + describe(bs.turning_points[j]));
    bs.touching[j] = excess <= touch;
  }

  bs.direction.resize(n);
  for (std::size_t j = 0; j < n; ++j) bs.direction[j] = expected_sign(n, j);

  // Band edges: Delta_n = +-2 on each side of the root.
  bs.bands.resize(n);
  bs.eigenvalues.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const int right_sign = bs.direction[j];
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    auto edge = [&](const DoubleDouble& far, std::size_t tp, int side_sign, bool right) {
      if (tp != none && bs.touching[tp]) return bs.turning_points[tp];
      const DoubleDouble target(2.0 * side_sign);
      const RealFunction f = [&](const DoubleDouble& E) { return disc_shifted(v, E, precision, 0, target); };
      try {
        return right ? find_root(f, bs.roots[j], far, tol, precision) : find_root(f, far, bs.roots[j], tol, precision);
      } catch (const BracketInvalid&) {
        throw PrecisionExceeded("band " + std::to_string(j + 1) + " is narrower than " +
                                std::string(to_string(precision)) + " precision resolves");
      }
    };
    const std::size_t left_tp = j > 0 ? j - 1 : none;
    const std::size_t right_tp = j + 1 < n ? j : none;
    bs.bands[j].left = edge(bs.stretch_lo(j), left_tp, -right_sign, false);
    bs.bands[j].right = edge(bs.stretch_hi(j), right_tp, right_sign, true);
    bs.eigenvalues[j] = right_sign > 0 ? bs.bands[j].right : bs.bands[j].left;
  }

  for (std::size_t j = 0; j < n; ++j) {
    const Band& b = bs.bands[j];
    if (!(b.left <= bs.roots[j] && bs.roots[j] <= b.right))
      throw StructureViolation("band " + std::to_string(j + 1) + " does not contain its root");
    if (j + 1 < n && !(b.right <= bs.bands[j + 1].left))
      throw StructureViolation("bands " + std::to_string(j + 1) + " and " + std::to_string(j + 2) + " overlap");
  }
  return bs;
}

std::vector<double> bandwidths(const BandStructure& bs) {
  std::vector<double> w(bs.n);
  for (std::size_t j = 0; j < bs.n; ++j) w[j] = bs.bands[j].width();
  return w;
}

std::vector<double> bandwidth_rates(const BandStructure& bs) {
  std::vector<double> r(bs.n);
  for (std::size_t j = 0; j < bs.n; ++j) {
    const double w = bs.bands[j].width();
    r[j] = w > 0.0 ? -std::log(w) / static_cast<double>(bs.n) : std::numeric_limits<double>::infinity();
  }
  return r;
}

SpacingStats spacing_stats(const BandStructure& bs) {
  SpacingStats s{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (std::size_t j = 0; j + 1 < bs.n; ++j) {
    s.min_eig_gap = std::min(s.min_eig_gap, dd::abs(bs.eigenvalues[j + 1] - bs.eigenvalues[j]).to_double());
    s.min_root_gap = std::min(s.min_root_gap, (bs.roots[j + 1] - bs.roots[j]).to_double());
  }
  return s;
}

SpacingStats spacing_stats(const PotentialSample& sample) { return spacing_stats(band_structure(sample)); }

std::vector<ScaledReal> turning_point_magnitudes(const BandStructure& bs) {
  std::vector<ScaledReal> out;
  out.reserve(bs.tp_values.size());
  for (const ScaledReal& d : bs.tp_values) out.push_back(d.abs());
  return out;
}

std::string bands_csv(const BandStructure& bs) {
  CsvWriter w({"j", "E_j", "left", "right", "width", "logwidth", "tp_logmag"});
  for (std::size_t j = 0; j < bs.n; ++j) {
    const double width = bs.bands[j].width();
    const std::optional<double> tp = j + 1 < bs.n ? std::optional<double>(bs.tp_logmag[j]) : std::nullopt;
    w.row(j + 1, bs.roots[j].to_double(), bs.bands[j].left.to_double(), bs.bands[j].right.to_double(), width,
          width > 0.0 ? std::log(width) : -std::numeric_limits<double>::infinity(), tp);
  }
  return w.str();
}

}  // namespace hatano

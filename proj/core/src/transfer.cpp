#include "hatano/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hatano/csv.hpp"
#include "hatano/errors.hpp"
#include "hatano/parallel.hpp"

namespace hatano {

std::array<double, 4> transfer_matrix(double E, double v) { return {E - v, -1.0, 1.0, 0.0}; }

double spectral_norm(const std::array<double, 4>& m) {
  const double a = m[0], b = m[1], c = m[2], d = m[3];
  return 0.5 * (std::hypot(a + d, b - c) + std::hypot(a - d, b + c));
}

double ScaledMatrix2::log_norm() const { return logscale + std::log(spectral_norm(m)); }

double ScaledMatrix2::log_frobenius() const {
  return logscale + 0.5 * std::log(m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3]);
}

ScaledReal ScaledMatrix2::trace() const {
  const ScaledReal t = ScaledReal::from_double(m[0] + m[3]);
  return t.is_zero() ? t : ScaledReal::from_log(t.sign, t.logmag + logscale);
}

ScaledReal ScaledMatrix2::determinant() const {
  const ScaledReal d = ScaledReal::from_double(m[0] * m[3] - m[1] * m[2]);
  return d.is_zero() ? d : ScaledReal::from_log(d.sign, d.logmag + 2.0 * logscale);
}

namespace {

/// m <- A_{E,v} m followed by an exact power-of-two renormalization.
inline void step(std::array<double, 4>& m, std::int64_t& exp2, double a) {
  const double r0 = a * m[0] - m[2];
  const double r1 = a * m[1] - m[3];
  m[2] = m[0];
  m[3] = m[1];
  m[0] = r0;
  m[1] = r1;
  const double big = std::max({std::abs(m[0]), std::abs(m[1]), std::abs(m[2]), std::abs(m[3])});
  int e = 0;
  std::frexp(big, &e);
  if (e != 0) {
    for (double& x : m) x = std::ldexp(x, -e);
    exp2 += e;
  }
}

ScaledMatrix2 finish(const std::array<double, 4>& m, std::int64_t exp2) {
  return {m, static_cast<double>(exp2) * std::numbers::ln2};
}

double replica_growth(const DistributionSpec& spec, double E, std::int64_t steps, std::uint64_t seed,
                      std::uint64_t replica) {
  CounterRng rng(seed, replica + 1);
  std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};
  std::int64_t exp2 = 0;
  for (std::int64_t k = 0; k < steps; ++k) step(m, exp2, E - spec.draw(rng));
  return finish(m, exp2).log_norm() / static_cast<double>(steps);
}

void require_nondegenerate(const DistributionSpec& spec) {
  if (spec.degenerate())
    throw DegenerateSpec("Lyapunov statistics need a nondegenerate law, got " + spec.describe());
}

LyapunovEstimate summarize(double E, std::int64_t steps, const std::vector<double>& growth) {
  LyapunovEstimate est;
  est.energy = E;
  est.steps = steps;
  est.replicas = static_cast<std::int64_t>(growth.size());
  double mean = 0.0;
  for (double x : growth) mean += x;
  mean /= static_cast<double>(growth.size());
  double ss = 0.0;
  for (double x : growth) ss += (x - mean) * (x - mean);
  est.gamma_hat = mean;
  if (growth.size() > 1) {
    const double var = ss / static_cast<double>(growth.size() - 1);
    est.std_error = std::sqrt(var / static_cast<double>(growth.size()));
  }
  return est;
}

}  // namespace

ScaledMatrix2 transfer_product(std::span<const double> v, double E) {
  std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};
  std::int64_t exp2 = 0;
  for (double vk : v) step(m, exp2, E - vk);
  return finish(m, exp2);
}

ScaledMatrix2 transfer_product(const PotentialSample& sample, double E) { return transfer_product(sample.values, E); }

std::array<DoubleDouble, 4> transfer_product_dd(std::span<const double> v, const DoubleDouble& E) {
  std::array<DoubleDouble, 4> m{DoubleDouble(1.0), DoubleDouble(0.0), DoubleDouble(0.0), DoubleDouble(1.0)};
  for (double vk : v) {
    const DoubleDouble a = E - vk;
    const DoubleDouble r0 = a * m[0] - m[2];
    const DoubleDouble r1 = a * m[1] - m[3];
    m[2] = m[0];
    m[3] = m[1];
    m[0] = r0;
    m[1] = r1;
  }
  return m;
}

LyapunovEstimate lyapunov_mc(const DistributionSpec& spec, double E, std::int64_t steps, std::int64_t replicas,
                             std::uint64_t seed) {
  require_nondegenerate(spec);
  if (steps < 1000) throw InvalidArgument("lyapunov_mc: steps must be >= 1000");
  if (replicas < 1) throw InvalidArgument("lyapunov_mc: replicas must be >= 1");
  std::vector<double> growth(static_cast<std::size_t>(replicas));
  parallel_for(growth.size(), [&](std::size_t r) { growth[r] = replica_growth(spec, E, steps, seed, r); });
  return summarize(E, steps, growth);
}

std::vector<LyapunovEstimate> lyapunov_profile(const DistributionSpec& spec, std::span<const double> E_grid,
                                               std::int64_t steps, std::int64_t replicas, std::uint64_t seed) {
  require_nondegenerate(spec);
  if (steps < 1000) throw InvalidArgument("lyapunov_profile: steps must be >= 1000");
  if (replicas < 1) throw InvalidArgument("lyapunov_profile: replicas must be >= 1");
  if (!std::is_sorted(E_grid.begin(), E_grid.end())) throw InvalidArgument("lyapunov_profile: grid must be sorted");
  std::vector<LyapunovEstimate> out(E_grid.size());
  parallel_for(E_grid.size(), [&](std::size_t i) {
    std::vector<double> growth(static_cast<std::size_t>(replicas));
    for (std::size_t r = 0; r < growth.size(); ++r) growth[r] = replica_growth(spec, E_grid[i], steps, seed, r);
    out[i] = summarize(E_grid[i], steps, growth);
  });
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, double spacing) {
  if (!(hi >= lo) || !(spacing > 0.0)) throw InvalidArgument("uniform_grid: need lo <= hi and spacing > 0");
  const auto intervals = static_cast<std::size_t>(std::ceil((hi - lo) / spacing - 1e-9));
  if (intervals == 0) return {lo};
  std::vector<double> grid(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(intervals);
  grid.back() = hi;
  return grid;
}

GammaProfile::GammaProfile(std::vector<LyapunovEstimate> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidArgument("GammaProfile: empty profile");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i].energy > points_[i - 1].energy))
      throw InvalidArgument("GammaProfile: energies must be strictly increasing");
}

double GammaProfile::interpolate(double E, bool error) const {
  auto value = [error](const LyapunovEstimate& p) { return error ? p.std_error : p.gamma_hat; };
  if (points_.empty()) throw InvalidArgument("GammaProfile: empty profile");
  if (E <= points_.front().energy) return value(points_.front());
  if (E >= points_.back().energy) return value(points_.back());
  const auto it = std::upper_bound(points_.begin(), points_.end(), E,
                                   [](double x, const LyapunovEstimate& p) { return x < p.energy; });
  const LyapunovEstimate& b = *it;
  const LyapunovEstimate& a = *(it - 1);
  const double t = (E - a.energy) / (b.energy - a.energy);
  return (1.0 - t) * value(a) + t * value(b);
}

std::string GammaProfile::to_csv() const {
  CsvWriter w({"E", "gamma_hat", "stderr", "steps", "replicas"});
  for (const auto& p : points_) w.row(p.energy, p.gamma_hat, p.std_error, p.steps, p.replicas);
  return w.str();
}

GammaProfile GammaProfile::from_csv(const std::string& text) {
  const CsvTable table = parse_csv(text);
  if (table.header != std::vector<std::string>{"E", "gamma_hat", "stderr", "steps", "replicas"})
    throw SchemaError("profile CSV: unexpected header");
  std::vector<LyapunovEstimate> points;
  for (const auto& row : table.rows) {
    LyapunovEstimate p;
    p.energy = parse_double(row[0]);
    p.gamma_hat = parse_double(row[1]);
    p.std_error = parse_double(row[2]);
    p.steps = static_cast<std::int64_t>(parse_double(row[3]));
    p.replicas = static_cast<std::int64_t>(parse_double(row[4]));
    points.push_back(p);
  }
  try {
    return GammaProfile(std::move(points));
  } catch (const InvalidArgument& e) {
    throw SchemaError(std::string("profile CSV: ") + e.what());
  }
}

GammaProfile zero_profile(double lo, double hi) {
  std::vector<LyapunovEstimate> pts(2);
  pts[0].energy = lo;
  pts[1].energy = hi;
  return GammaProfile(std::move(pts));
}

LargeDeviationSummary large_deviation_stats(const DistributionSpec& spec, double E, std::size_t n,
                                            std::size_t replicas, std::uint64_t seed) {
  require_nondegenerate(spec);
  const double ref = lyapunov_mc(spec, E, 100000, 16, derive_seed(seed, 0x6c64)).gamma_hat;
  return large_deviation_stats(spec, E, n, replicas, seed, ref);
}

LargeDeviationSummary large_deviation_stats(const DistributionSpec& spec, double E, std::size_t n,
                                            std::size_t replicas, std::uint64_t seed, double gamma_ref) {
  require_nondegenerate(spec);
  if (n < 1 || replicas < 1) throw InvalidArgument("large_deviation_stats: n and replicas must be positive");
  std::vector<double> dev(replicas);
  parallel_for(replicas, [&](std::size_t r) {
    const std::vector<double> v = draw_values(spec, n, seed, r + 1);
    dev[r] = transfer_product(v, E).log_norm() / static_cast<double>(n) - gamma_ref;
  });
  LargeDeviationSummary s;
  s.energy = E;
  s.n = n;
  s.replicas = replicas;
  s.gamma_ref = gamma_ref;
  for (double d : dev) s.mean += d;
  s.mean /= static_cast<double>(replicas);
  for (double d : dev) s.variance += (d - s.mean) * (d - s.mean);
  s.variance /= static_cast<double>(replicas);
  for (std::size_t i = 0; i < s.tail.size(); ++i) {
    const auto count = std::count_if(dev.begin(), dev.end(),
                                     [&](double d) { return std::abs(d) > LargeDeviationSummary::kThresholds[i]; });
    s.tail[i] = static_cast<double>(count) / static_cast<double>(replicas);
  }
  return s;
}

}  // namespace hatano

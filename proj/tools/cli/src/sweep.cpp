#include "hatano/cli/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "hatano/cli/manifest.hpp"
#include "hatano/csv.hpp"
#include "hatano/errors.hpp"
#include "hatano/parallel.hpp"

namespace hatano::cli {

using json = nlohmann::ordered_json;

namespace {

struct Part {
  std::vector<CheckRecord> records;
  std::vector<RateRow> rates;
  std::vector<FitRow> fits;
  std::vector<BandRateRow> band_rates;
  std::vector<FlowRow> flows;
};

template <class T>
void append(std::vector<T>& to, std::vector<T>&& from) {
  to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

double frequency(const std::map<std::string, StatementSummary>& s, std::string_view id) {
  const auto it = s.find(std::string(id));
  return it == s.end() ? std::numeric_limits<double>::quiet_NaN() : it->second.pass_frequency();
}

json nullable(double x) { return std::isfinite(x) ? json(x) : json(); }

Part run_realization(const ExperimentConfig& config, std::size_t n, std::size_t r, Precision precision,
                     const GammaProfile& gamma, std::span<const double> flow_grid) {
  Part p;
  const std::string id = std::to_string(r);
  const PotentialSample s = sample_potential(config.spec, n, realization_seed(config.seed, r));
  const BandStructure bs = band_structure(s, precision);
  const double eps = config.epsilon;

  const SpectrumFlow fl = flow(s, bs, flow_grid);
  for (std::size_t i = 0; i < fl.g_grid.size(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      p.flows.push_back({id, fl.g_grid[i], static_cast<int>(j) + 1, fl.trajectories[j][i], fl.is_real[j][i]});

  p.records = verify_sample(config, s, bs, gamma, id);

  const std::vector<double> rates = bandwidth_rates(bs);
  for (std::size_t j = 0; j < n; ++j) {
    const double e0 = bs.eigenvalues[j].to_double();
    const double gj = gamma(e0);
    p.band_rates.push_back({id, static_cast<int>(j) + 1, e0, rates[j], gj});
    const std::vector<double> grid = rate_grid(gj, eps);
    if (grid.size() < 3) continue;
    const std::vector<RateRecord> rr = rate_profile(s, bs, j, grid, gamma, eps);
    for (const RateRecord& rec : rr) p.rates.push_back({id, rec});
    if (const auto fit = fit_rate(rr)) p.fits.push_back({id, *fit, gj});
  }
  return p;
}

}  // namespace

std::string large_deviation_json(const LargeDeviationSummary& s) {
  json tail = json::object();
  for (std::size_t i = 0; i < s.tail.size(); ++i) {
    char key[16];
    std::snprintf(key, sizeof key, "%g", LargeDeviationSummary::kThresholds[i]);
    tail[key] = s.tail[i];
  }
  const json out{{"energy", s.energy}, {"n", s.n},       {"replicas", s.replicas}, {"gamma_ref", s.gamma_ref},
                 {"mean", s.mean},     {"variance", s.variance}, {"tail", tail}};
  return out.dump(2);
}

std::vector<CheckRecord> verify_sample(const ExperimentConfig& config, const PotentialSample& s,
                                       const BandStructure& bs, const GammaProfile& gamma, const std::string& id) {
  const double eps = config.epsilon;
  std::vector<CheckRecord> out;
  for (double g : config.g_grid) {
    append(out, check_theorem_bounds(s, bs, g, eps, gamma, id));
    append(out, check_intermediate_cosh_bound(s, bs, g, id));
    append(out, check_disc_identity(s, g, id));
  }
  append(out, check_turning_point_bound(s, bs, eps, gamma, id));
  append(out, check_bandwidth(bs, eps, gamma, id));
  append(out, check_critical_g(bs, eps, gamma, id));
  append(out, check_last_inequality(s, bs, config.points_per_stretch, id));
  out.push_back(check_spacing(bs, eps, id));
  out.push_back(check_derivative_ld(s, bs, gamma, config.derivative_epsilon, id));
  out.push_back(
      check_markov(s, bs.eigenvalues.front().to_double(), bs.eigenvalues.back().to_double(), bs.precision, id));
  return out;
}

std::uint64_t realization_seed(std::uint64_t seed, std::size_t r) { return derive_seed(seed, r + 1); }

GammaProfile gamma_profile_for(const ExperimentConfig& config, const Interval& k) {
  const std::vector<double> grid = uniform_grid(k.lo, k.hi, config.lyapunov.spacing);
  return GammaProfile(
      lyapunov_profile(config.spec, grid, config.lyapunov.steps, config.lyapunov.replicas, derive_seed(config.seed, 0)));
}

SweepResult run_sweep(const ExperimentConfig& config, std::size_t n, const Progress& progress) {
  config.validate();
  if (config.spec.degenerate())
    throw DegenerateSpec("sweep: law " + config.spec.describe() + " is a point mass; Lyapunov exponent is not positive");
  auto say = [&](const std::string& m) {
    if (progress) progress(m);
  };

  SweepResult res;
  res.n = n;
  const Interval k = spectral_interval(config.spec.bound());
  say("lyapunov profile on [" + format_double(k.lo) + ", " + format_double(k.hi) + "]");
  res.profile = gamma_profile_for(config, k);
  double gmax = 0.0;
  for (const LyapunovEstimate& e : res.profile.points()) gmax = std::max(gmax, e.gamma_hat);
  res.precision = resolve_precision(config.precision, n, gmax);

  std::vector<double> flow_grid{0.0};
  for (double g : config.g_grid)
    if (g > 0.0) flow_grid.push_back(g);

  say("realizations: " + std::to_string(config.realizations) + " at n = " + std::to_string(n) + " (" +
      std::string(to_string(res.precision)) + " precision)");
  std::vector<Part> parts(config.realizations);
  parallel_for(config.realizations, [&](std::size_t r) {
    parts[r] = run_realization(config, n, r, res.precision, res.profile, flow_grid);
  });
  for (Part& p : parts) {
    append(res.records, std::move(p.records));
    append(res.rates, std::move(p.rates));
    append(res.fits, std::move(p.fits));
    append(res.band_rates, std::move(p.band_rates));
    append(res.flows, std::move(p.flows));
  }

  say("large deviations at E = " + format_double(config.large_deviation.energy));
  const std::uint64_t ld_seed = derive_seed(config.seed, 0x1d);
  res.ld = large_deviation_stats(config.spec, config.large_deviation.energy, n, config.large_deviation.replicas, ld_seed);
  res.ld_doubled = large_deviation_stats(config.spec, config.large_deviation.energy, 2 * n,
                                         config.large_deviation.replicas, ld_seed, res.ld.gamma_ref);
  res.metrics = compute_metrics(res);
  return res;
}

SweepMetrics compute_metrics(const SweepResult& r) {
  const auto summary = summarize(r.records);
  SweepMetrics m;
  m.reality_frequency = frequency(summary, stmt::kThmReal);
  m.joint_bound_frequency = joint_bound_frequency(r.records);
  m.rate_fits = r.fits.size();
  std::vector<double> slope, icpt, bw;
  for (const FitRow& f : r.fits) {
    slope.push_back(std::abs(f.fit.slope + 1.0));
    icpt.push_back(std::abs(f.fit.intercept - f.gamma_hat));
  }
  for (const BandRateRow& b : r.band_rates) bw.push_back(std::abs(b.rate - b.gamma_hat));
  m.median_slope_deviation = median(slope);
  m.median_intercept_deviation = median(icpt);
  m.critical_g_frequency = frequency(summary, stmt::kCriticalG);
  m.bandwidth_median_deviation = median(bw);
  m.bandwidth_upper_frequency = frequency(summary, stmt::kBandwidthUpper);
  m.spacing_frequency = frequency(summary, stmt::kSpacing);
  m.root_gap_frequency = frequency(summary, stmt::kRootGap);
  m.turning_point_frequency = frequency(summary, stmt::kTurningPoint);
  m.derivative_ld_frequency = frequency(summary, stmt::kDerivativeLd);
  for (auto id : {stmt::kLemma2, stmt::kLastDerivative, stmt::kMarkov, stmt::kCoshBound, stmt::kDiscIdentity})
    if (const auto it = summary.find(std::string(id)); it != summary.end()) m.deterministic_violations += it->second.failed;
  m.ld_tail = r.ld.tail[1];
  m.ld_tail_doubled = r.ld_doubled.tail[1];
  return m;
}

std::string sweep_summary_json(const SweepResult& r, const ExperimentConfig& config) {
  const SweepMetrics& m = r.metrics;
  auto target = [](double value, double threshold, bool at_least) {
    const bool met = std::isfinite(value) && (at_least ? value >= threshold : value <= threshold);
    return json{{"value", nullable(value)}, {"threshold", threshold}, {"met", met}};
  };
  json out;
  out["n"] = r.n;
  out["realizations"] = config.realizations;
  out["epsilon"] = config.epsilon;
  out["precision"] = std::string(to_string(r.precision));
  out["statements"] = json::parse(summary_json(summarize(r.records)));
  json targets;
  targets["reality_frequency"] = target(m.reality_frequency, 0.95, true);
  targets["joint_bound_frequency"] = target(m.joint_bound_frequency, 0.90, true);
  targets["median_slope_deviation"] = target(m.median_slope_deviation, 0.15, false);
  targets["median_intercept_deviation"] = target(m.median_intercept_deviation, 0.15, false);
  targets["critical_g_frequency"] = target(m.critical_g_frequency, 0.90, true);
  targets["bandwidth_median_deviation"] = target(m.bandwidth_median_deviation, 0.15, false);
  targets["bandwidth_upper_frequency"] = target(m.bandwidth_upper_frequency, 0.90, true);
  targets["spacing_frequency"] = target(m.spacing_frequency, 0.95, true);
  targets["root_gap_frequency"] = target(m.root_gap_frequency, 0.95, true);
  targets["turning_point_frequency"] = target(m.turning_point_frequency, 0.90, true);
  targets["derivative_ld_frequency"] = target(m.derivative_ld_frequency, 0.95, true);
  targets["ld_tail"] = target(m.ld_tail, 0.05, false);
  targets["ld_tail_doubled"] = target(m.ld_tail_doubled, std::max(m.ld_tail, 0.0), false);
  targets["deterministic_violations"] = {{"value", m.deterministic_violations}, {"threshold", 0},
                                         {"met", m.deterministic_violations == 0}};
  out["targets"] = targets;
  out["rate_fits"] = m.rate_fits;
  out["large_deviation"] = {{"n", json::parse(large_deviation_json(r.ld))},
                            {"2n", json::parse(large_deviation_json(r.ld_doubled))}};
  return out.dump(2) + "\n";
}

std::vector<std::string> write_sweep(const SweepResult& r, const ExperimentConfig& config,
                                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> files;
  auto put = [&](const std::string& name, const std::string& text) {
    write_text(dir / name, text);
    files.push_back(name);
  };

  put("profile.csv", r.profile.to_csv());
  put("records.csv", records_csv(r.records));

  CsvWriter rates({"sample_id", "j", "g", "rate", "predicted"});
  for (const RateRow& row : r.rates) rates.row(row.sample_id, row.record.j, row.record.g, row.record.rate, row.record.predicted);
  put("rates.csv", rates.str());

  CsvWriter fits({"sample_id", "j", "slope", "intercept", "points", "gamma_hat"});
  for (const FitRow& f : r.fits) fits.row(f.sample_id, f.fit.j, f.fit.slope, f.fit.intercept, f.fit.points, f.gamma_hat);
  put("fits.csv", fits.str());

  CsvWriter bands({"sample_id", "j", "E", "rate", "gamma_hat"});
  for (const BandRateRow& b : r.band_rates) bands.row(b.sample_id, b.j, b.energy, b.rate, b.gamma_hat);
  put("band_rates.csv", bands.str());

  CsvWriter flows({"sample_id", "g", "j", "re", "im", "is_real"});
  for (const FlowRow& f : r.flows) flows.row(f.sample_id, f.g, f.j, f.z.real(), f.z.imag(), f.is_real);
  put("flows.csv", flows.str());

  put("summary.json", sweep_summary_json(r, config));
  return files;
}

}  // namespace hatano::cli

#include "hatano/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <tuple>

#include <boost/math/tools/minima.hpp>
#include <json.hpp>

#include "hatano/csv.hpp"
#include "hatano/errors.hpp"
#include "hatano/parallel.hpp"

namespace hatano {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kIdentityTol = 1e-8;
constexpr double kSlack = 1e-9;
constexpr int kMarkovNodes = 512;
constexpr int kLdNodes = 512;

const double kLogGolden = std::log(1.0 + std::sqrt(5.0));  // log(1 + sqrt 5)
const double kLogLastConst = 1.0 - kLogGolden;              // log(e / (1 + sqrt 5))

double log_abs(const DoubleDouble& x) {
  const double a = dd::abs(x).to_double();
  return a > 0.0 ? std::log(a) : -kInf;
}

double log_disc(std::span<const double> v, const DoubleDouble& E, Precision p, int order) {
  return disc_shifted(v, E, p, order).logmag;
}

int one_based(std::size_t j) { return static_cast<int>(j) + 1; }

CheckRecord with_status(CheckRecord r, CheckStatus s) {
  r.status = s;
  return r;
}

// Differences below this are at the level of the refinement error.
double capability(const BandStructure& bs) { return 100.0 * refine_tolerance(bs.precision, bs.k); }

double gamma_uncertainty(const GammaProfile& gamma, double E, std::size_t n) {
  return 3.0 * gamma.std_error(E) * static_cast<double>(n);
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::inconclusive:
      return "inconclusive";
    case CheckStatus::skipped:
      return "skipped";
    case CheckStatus::not_applicable:
      return "not-applicable";
  }
  return "fail";
}

CheckStatus check_status_from_string(std::string_view s) {
  for (CheckStatus c : {CheckStatus::pass, CheckStatus::fail, CheckStatus::inconclusive, CheckStatus::skipped,
                        CheckStatus::not_applicable})
    if (to_string(c) == s) return c;
  throw SchemaError("unknown check status '" + std::string(s) + "'");
}

double tolerance(std::string_view id) {
  if (id == stmt::kLemma2 || id == stmt::kLastDerivative || id == stmt::kMarkov || id == stmt::kCoshBound)
    return kSlack;
  return 0.0;
}

CheckRecord make_record(std::string statement_id, std::string sample_id, std::optional<int> j,
                        std::optional<double> g, std::optional<double> epsilon, double margin, double uncertainty) {
  CheckRecord r;
  r.passed = margin >= -tolerance(statement_id);
  r.statement_id = std::move(statement_id);
  r.sample_id = std::move(sample_id);
  r.j = j;
  r.g = g;
  r.epsilon = epsilon;
  r.margin = margin;
  if (uncertainty > 0.0 && std::abs(margin) < uncertainty)
    r.status = CheckStatus::inconclusive;
  else
    r.status = r.passed ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

std::vector<CheckRecord> check_disc_identity(const PotentialSample& sample, double g, const std::string& sample_id) {
  const std::size_t n = sample.values.size();
  const SpectralParams params = SpectralParams::make(g, n);
  const double log_target = params.target.logmag;
  const BandStructure bs = band_structure(sample, Precision::extended);
  const SpectrumResult spec = eigvals_g(sample, bs, params);

  std::vector<CheckRecord> out;
  for (std::size_t k = 0; k < spec.eigenvalues_dd.size(); ++k) {
    const double r = level_residual(sample.values, spec.eigenvalues_dd[k], log_target);
    const std::optional<int> j = spec.index_map[k] >= 0 ? std::optional<int>(spec.index_map[k] + 1) : std::nullopt;
    out.push_back(make_record(std::string(stmt::kDiscIdentity), sample_id, j, g, std::nullopt, kIdentityTol - r));
  }
  if (n <= kMaxOracleSize) {
    const DiscCoeffs oracle = charpoly_oracle(sample, g);
    const std::vector<Complex> roots = poly_roots(oracle.coefficients);
    for (const Complex& z : roots) {
      const double r = level_residual(sample.values, ComplexDD(z.real(), z.imag()), log_target);
      out.push_back(
          make_record(std::string(stmt::kDiscOracleRoot), sample_id, std::nullopt, g, std::nullopt, kIdentityTol - r));
    }
    const double h = hausdorff(roots, spec.eigenvalues);
    out.push_back(make_record(std::string(stmt::kDiscOracle), sample_id, std::nullopt, g, std::nullopt, kIdentityTol - h));
  }
  return out;
}

std::vector<CheckRecord> check_theorem_bounds(const PotentialSample& sample, const BandStructure& bs, double g,
                                              double epsilon, const GammaProfile& gamma,
                                              const std::string& sample_id) {
  if (!(g >= 0.0)) throw InvalidArgument("check_theorem_bounds: g must be >= 0");
  if (!(epsilon > 0.0)) throw InvalidArgument("check_theorem_bounds: epsilon must be > 0");
  const std::size_t n = bs.n;
  const double nd = static_cast<double>(n);
  const SpectralParams params = SpectralParams::make(g, n);
  const DoubleDouble target = params.target_dd();
  std::optional<SpectrumResult> full;

  std::vector<CheckRecord> out;
  for (std::size_t j = 0; j < n; ++j) {
    const DoubleDouble lam0 = bs.eigenvalues[j];
    const double e0 = lam0.to_double();
    const double gj = gamma(e0);
    if (g > gj - epsilon) continue;
    const double unc = gamma_uncertainty(gamma, e0, n);
    const int jj = one_based(j);

    const std::optional<DoubleDouble> lam = real_eigenvalue(sample, bs, j, target);
    const double gc = critical_g(bs, j);
    double real_margin = gc - g;
    if (lam && !(real_margin >= 0.0)) real_margin = 0.0;
    if (!lam && real_margin >= 0.0) real_margin = -std::numeric_limits<double>::min();
    out.push_back(make_record(std::string(stmt::kThmReal), sample_id, jj, g, epsilon, real_margin));

    if (g == 0.0) {
      out.push_back(make_record(std::string(stmt::kThmUpper), sample_id, jj, g, epsilon, kInf));
      out.push_back(make_record(std::string(stmt::kThmLower), sample_id, jj, g, epsilon, 0.0));
      continue;
    }

    double d;
    if (lam) {
      d = dd::abs(*lam - lam0).to_double();
    } else {
      if (!full) full = eigvals_g(sample, bs, params);
      d = kInf;
      for (const ComplexDD& z : full->eigenvalues_dd) {
        if (!(z.im.hi() > 0.0)) continue;
        d = std::min(d, dd::abs(z - ComplexDD(lam0)));
      }
    }
    if (!(d >= capability(bs))) {
      for (auto id : {stmt::kThmUpper, stmt::kThmLower})
        out.push_back(with_status(make_record(std::string(id), sample_id, jj, g, epsilon, kNaN), CheckStatus::skipped));
      continue;
    }
    const double logd = std::log(d);
    const double upper = -(gj - g - epsilon) * nd - logd;
    const double lower = logd - (2.0 * std::log1p(-std::exp(-nd * g)) - (gj - g + epsilon) * nd);
    out.push_back(make_record(std::string(stmt::kThmUpper), sample_id, jj, g, epsilon, upper, unc));
    out.push_back(make_record(std::string(stmt::kThmLower), sample_id, jj, g, epsilon, lower, unc));
  }
  return out;
}

std::vector<double> rate_grid(double gamma_j, double epsilon, double start, double step) {
  std::vector<double> grid;
  const double top = gamma_j - epsilon;
  for (int k = 0;; ++k) {
    const double g = start + step * k;
    if (g > top + 1e-12) break;
    grid.push_back(g);
  }
  return grid;
}

std::vector<RateRecord> rate_profile(const PotentialSample& sample, const BandStructure& bs, std::size_t j,
                                     std::span<const double> g_grid, const GammaProfile& gamma, double epsilon) {
  if (j >= bs.n) throw InvalidArgument("rate_profile: index out of range");
  const DoubleDouble lam0 = bs.eigenvalues[j];
  const double gj = gamma(lam0.to_double());
  const double nd = static_cast<double>(bs.n);
  std::vector<RateRecord> out;
  for (double g : g_grid) {
    if (g < 0.0 || g > gj - epsilon + 1e-12) continue;
    RateRecord r{one_based(j), g, kInf, gj - g};
    if (g > 0.0) {
      const auto lam = real_eigenvalue(sample, bs, j, SpectralParams::make(g, bs.n).target_dd());
      r.rate = kNaN;
      if (lam) {
        const double d = dd::abs(*lam - lam0).to_double();
        if (d >= capability(bs)) r.rate = -std::log(d) / nd;
      }
    }
    out.push_back(r);
  }
  return out;
}

std::optional<RateFit> fit_rate(std::span<const RateRecord> records) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (const RateRecord& r : records) {
    if (!std::isfinite(r.rate)) continue;
    sx += r.g;
    sy += r.rate;
    sxx += r.g * r.g;
    sxy += r.g * r.rate;
    ++m;
  }
  if (m < 2) return std::nullopt;
  const double md = static_cast<double>(m);
  const double den = md * sxx - sx * sx;
  if (!(std::abs(den) > 0.0)) return std::nullopt;
  RateFit f;
  f.j = records.front().j;
  f.slope = (md * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / md;
  f.points = m;
  return f;
}

std::vector<CheckRecord> check_last_inequality(const PotentialSample& sample, const BandStructure& bs,
                                               std::size_t points_per_stretch, const std::string& sample_id) {
  if (points_per_stretch == 0) throw InvalidArgument("check_last_inequality: need at least one point per stretch");
  const std::span<const double> v = sample.values;
  const std::size_t n = bs.n;
  std::vector<CheckRecord> out;
  for (std::size_t j = 0; j < n; ++j) {
    const DoubleDouble lo = j == 0 ? bs.roots[0] : bs.turning_points[j - 1];
    const DoubleDouble hi = j + 1 == n ? bs.roots[n - 1] : bs.turning_points[j];
    const double logw = std::log(bs.bands[j].width());
    const DoubleDouble span = hi - lo;

    // Worst point of the stretch.
    double worst = kInf;
    for (std::size_t k = 0; k < points_per_stretch; ++k) {
      const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(points_per_stretch);
      const DoubleDouble E = lo + span * DoubleDouble(t);
      double margin;
      if (E == bs.roots[j]) {
        margin = 0.0;
      } else {
        const double rhs = kLogLastConst + log_disc(v, E, bs.precision, 0) + logw;
        margin = rhs - log_abs(E - bs.roots[j]);
      }
      worst = std::min(worst, margin);
    }
    out.push_back(make_record(std::string(stmt::kLemma2), sample_id, one_based(j), std::nullopt, std::nullopt, worst));

    const double slope = log_disc(v, bs.roots[j], bs.precision, 1);
    out.push_back(make_record(std::string(stmt::kLastDerivative), sample_id, one_based(j), std::nullopt, std::nullopt,
                              slope + logw - kLogGolden));
  }
  return out;
}

namespace {

// Max of log|Delta_n^{(order)}| on [a, b].
double log_max_on(std::span<const double> v, double a, double b, Precision p, int order) {
  auto f = [&](double x) { return log_disc(v, DoubleDouble(x), p, order); };
  std::vector<double> x(kMarkovNodes);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int k = 0; k < kMarkovNodes; ++k)
    x[static_cast<std::size_t>(k)] = std::clamp(mid + half * std::cos(std::numbers::pi * k / (kMarkovNodes - 1)), a, b);
  std::sort(x.begin(), x.end());
  std::size_t best = 0;
  double best_val = -kInf;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double val = f(x[k]);
    if (val > best_val) {
      best_val = val;
      best = k;
    }
  }
  const double lo = x[best == 0 ? 0 : best - 1];
  const double hi = x[std::min(best + 1, x.size() - 1)];
  if (hi > lo) {
    const auto r = boost::math::tools::brent_find_minima([&](double t) { return -f(t); }, lo, hi, 40);
    best_val = std::max(best_val, -r.second);
  }
  return best_val;
}

}  // namespace

CheckRecord check_markov(const PotentialSample& sample, double a, double b, Precision precision,
                         const std::string& sample_id) {
  if (!(a < b)) throw InvalidArgument("check_markov: need a < b");
  const std::span<const double> v = sample.values;
  const double nd = static_cast<double>(v.size());
  const double log_p = log_max_on(v, a, b, precision, 0);
  const double log_dp = log_max_on(v, a, b, precision, 1);
  const double margin = std::log(2.0 * nd * nd / (b - a)) + log_p - log_dp;
  return make_record(std::string(stmt::kMarkov), sample_id, std::nullopt, std::nullopt, std::nullopt, margin);
}

std::vector<CheckRecord> check_turning_point_bound(const PotentialSample& sample, const BandStructure& bs,
                                                   double epsilon, const GammaProfile& gamma,
                                                   const std::string& sample_id) {
  (void)sample;
  const std::size_t n = bs.n;
  const double nd = static_cast<double>(n);
  std::vector<CheckRecord> out;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double a = bs.eigenvalues[j].to_double(), b = bs.eigenvalues[j + 1].to_double();
    const double at = gamma(a) >= gamma(b) ? a : b;
    const double gmax = gamma(at);
    const double unc = gamma_uncertainty(gamma, at, n);
    const bool applicable = gmax > 3.0 * gamma.std_error(at);
    const double tp = bs.tp_logmag[j];

    CheckRecord r12 = make_record(std::string(stmt::kTurningPoint), sample_id, one_based(j), std::nullopt, epsilon,
                                  tp - (gmax - epsilon) * nd, unc);
    const double chain = -epsilon * nd - std::log(2.0 * nd * nd) + kLogGolden + (gmax - epsilon) * nd;
    CheckRecord r01 = make_record(std::string(stmt::kTurningPointChain), sample_id, one_based(j), std::nullopt,
                                  epsilon, tp - chain, unc);
    if (!applicable) {
      r12.status = CheckStatus::not_applicable;
      r01.status = CheckStatus::not_applicable;
    }
    out.push_back(std::move(r12));
    out.push_back(std::move(r01));
  }
  const SpacingStats s = spacing_stats(bs);
  out.push_back(make_record(std::string(stmt::kRootGap), sample_id, std::nullopt, std::nullopt, epsilon,
                            std::log(s.min_root_gap) + epsilon * nd));
  return out;
}

CheckRecord check_derivative_ld(const PotentialSample& sample, const BandStructure& bs, const GammaProfile& gamma,
                                double epsilon, const std::string& sample_id) {
  const std::span<const double> v = sample.values;
  const double nd = static_cast<double>(bs.n);
  double worst = -kInf, at = bs.k.lo;
  for (int k = 0; k < kLdNodes; ++k) {
    const double E = bs.k.lo + bs.k.length() * k / (kLdNodes - 1);
    const double val = log_disc(v, DoubleDouble(E), bs.precision, 1) - nd * gamma(E);
    if (val > worst) {
      worst = val;
      at = E;
    }
  }
  return make_record(std::string(stmt::kDerivativeLd), sample_id, std::nullopt, std::nullopt, epsilon,
                     epsilon * nd - worst, gamma_uncertainty(gamma, at, bs.n));
}

CheckRecord check_spacing(const BandStructure& bs, double epsilon, const std::string& sample_id) {
  const SpacingStats s = spacing_stats(bs);
  const double margin = std::log(s.min_eig_gap) + epsilon * static_cast<double>(bs.n);
  return make_record(std::string(stmt::kSpacing), sample_id, std::nullopt, std::nullopt, epsilon, margin);
}

std::vector<CheckRecord> check_spacings(std::span<const PotentialSample> ensemble, double epsilon,
                                        std::span<const std::string> sample_ids) {
  for (const PotentialSample& s : ensemble)
    if (s.spec.degenerate())
      throw DegenerateSpec("check_spacings: law " + s.spec.describe() + " is a point mass");
  if (!sample_ids.empty() && sample_ids.size() != ensemble.size())
    throw InvalidArgument("check_spacings: one sample id per sample required");
  std::vector<CheckRecord> out(ensemble.size());
  parallel_for(ensemble.size(), [&](std::size_t i) {
    const std::string id = sample_ids.empty() ? std::to_string(i) : sample_ids[i];
    out[i] = check_spacing(band_structure(ensemble[i]), epsilon, id);
  });
  return out;
}

std::vector<CheckRecord> check_intermediate_cosh_bound(const PotentialSample& sample, const BandStructure& bs,
                                                       double g, const std::string& sample_id) {
  const SpectralParams params = SpectralParams::make(g, bs.n);
  const DoubleDouble target = params.target_dd();
  std::vector<CheckRecord> out;
  for (std::size_t j = 0; j < bs.n; ++j) {
    if (!bs.positive_end(j)) continue;
    const auto lam = real_eigenvalue(sample, bs, j, target);
    if (!lam) continue;
    const double logd = log_abs(*lam - bs.eigenvalues[j]);
    const double margin = params.target.logmag + std::log(bs.bands[j].width()) - logd;
    out.push_back(make_record(std::string(stmt::kCoshBound), sample_id, one_based(j), g, std::nullopt, margin));
  }
  return out;
}

std::vector<CheckRecord> check_bandwidth(const BandStructure& bs, double epsilon, const GammaProfile& gamma,
                                         const std::string& sample_id) {
  const double nd = static_cast<double>(bs.n);
  std::vector<CheckRecord> out;
  for (std::size_t j = 0; j < bs.n; ++j) {
    const double e0 = bs.eigenvalues[j].to_double();
    const double gj = gamma(e0);
    CheckRecord r = make_record(std::string(stmt::kBandwidthUpper), sample_id, one_based(j), std::nullopt, epsilon,
                                -std::log(bs.bands[j].width()) - (gj - epsilon) * nd, gamma_uncertainty(gamma, e0, bs.n));
    if (!(gj > 3.0 * gamma.std_error(e0))) r.status = CheckStatus::not_applicable;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckRecord> check_critical_g(const BandStructure& bs, double epsilon, const GammaProfile& gamma,
                                          const std::string& sample_id) {
  std::vector<CheckRecord> out;
  for (std::size_t j = 1; j + 1 < bs.n; ++j) {
    const double e0 = bs.eigenvalues[j].to_double();
    out.push_back(make_record(std::string(stmt::kCriticalG), sample_id, one_based(j), std::nullopt, epsilon,
                              critical_g(bs, j) - (gamma(e0) - epsilon), 3.0 * gamma.std_error(e0)));
  }
  return out;
}

std::vector<double> bandwidth_rate_deviation(const BandStructure& bs, const GammaProfile& gamma) {
  const std::vector<double> rates = bandwidth_rates(bs);
  std::vector<double> out(bs.n);
  for (std::size_t j = 0; j < bs.n; ++j) out[j] = std::abs(rates[j] - gamma(bs.eigenvalues[j].to_double()));
  return out;
}

double StatementSummary::pass_frequency() const {
  const std::size_t conclusive = passed + failed;
  return conclusive == 0 ? kNaN : static_cast<double>(passed) / static_cast<double>(conclusive);
}

std::map<std::string, StatementSummary> summarize(std::span<const CheckRecord> records) {
  std::map<std::string, StatementSummary> out;
  for (const CheckRecord& r : records) {
    StatementSummary& s = out[r.statement_id];
    ++s.total;
    switch (r.status) {
      case CheckStatus::pass:
        ++s.passed;
        break;
      case CheckStatus::fail:
        ++s.failed;
        break;
      case CheckStatus::inconclusive:
        ++s.inconclusive;
        break;
      case CheckStatus::skipped:
        ++s.skipped;
        break;
      case CheckStatus::not_applicable:
        ++s.not_applicable;
        break;
    }
  }
  return out;
}

double joint_bound_frequency(std::span<const CheckRecord> records) {
  using Key = std::tuple<std::string, int, double>;
  std::map<Key, std::pair<std::optional<CheckStatus>, std::optional<CheckStatus>>> keyed;
  for (const CheckRecord& r : records) {
    const bool upper = r.statement_id == stmt::kThmUpper;
    if (!upper && r.statement_id != stmt::kThmLower) continue;
    auto& slot = keyed[{r.sample_id, r.j.value_or(0), r.g.value_or(kNaN)}];
    (upper ? slot.first : slot.second) = r.status;
  }
  std::size_t both = 0, ok = 0;
  auto conclusive = [](const std::optional<CheckStatus>& s) {
    return s && (*s == CheckStatus::pass || *s == CheckStatus::fail);
  };
  for (const auto& [key, slot] : keyed) {
    if (!conclusive(slot.first) || !conclusive(slot.second)) continue;
    ++both;
    if (*slot.first == CheckStatus::pass && *slot.second == CheckStatus::pass) ++ok;
  }
  return both == 0 ? kNaN : static_cast<double>(ok) / static_cast<double>(both);
}

std::string records_csv(std::span<const CheckRecord> records) {
  CsvWriter w({"statement_id", "sample_id", "j", "g", "epsilon", "margin", "passed", "status"});
  for (const CheckRecord& r : records)
    w.row(r.statement_id, r.sample_id, r.j, r.g, r.epsilon, r.margin, r.passed, to_string(r.status));
  return w.str();
}

std::vector<CheckRecord> records_from_csv(const std::string& text) {
  const CsvTable t = parse_csv(text);
  const std::size_t c_id = t.column("statement_id"), c_sample = t.column("sample_id"), c_j = t.column("j"),
                    c_g = t.column("g"), c_eps = t.column("epsilon"), c_margin = t.column("margin"),
                    c_passed = t.column("passed"), c_status = t.column("status");
  std::vector<CheckRecord> out;
  for (const auto& row : t.rows) {
    CheckRecord r;
    r.statement_id = row[c_id];
    r.sample_id = row[c_sample];
    if (!row[c_j].empty()) r.j = static_cast<int>(parse_double(row[c_j]));
    if (!row[c_g].empty()) r.g = parse_double(row[c_g]);
    if (!row[c_eps].empty()) r.epsilon = parse_double(row[c_eps]);
    r.margin = parse_double(row[c_margin]);
    if (row[c_passed] != "0" && row[c_passed] != "1") throw SchemaError("passed must be 0 or 1");
    r.passed = row[c_passed] == "1";
    r.status = check_status_from_string(row[c_status]);
    out.push_back(std::move(r));
  }
  return out;
}

std::string summary_json(const std::map<std::string, StatementSummary>& summary) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [id, s] : summary) {
    const double f = s.pass_frequency();
    out[id] = {{"total", s.total},
               {"passed", s.passed},
               {"failed", s.failed},
               {"inconclusive", s.inconclusive},
               {"skipped", s.skipped},
               {"not_applicable", s.not_applicable},
               {"pass_frequency", std::isfinite(f) ? nlohmann::ordered_json(f) : nlohmann::ordered_json()}};
  }
  return out.dump(2) + "\n";
}

double median(std::vector<double> xs) {
  std::erase_if(xs, [](double x) { return std::isnan(x); });
  if (xs.empty()) return kNaN;
  const std::size_t mid = xs.size() / 2;
  std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid), xs.end());
  const double hi = xs[mid];
  if (xs.size() % 2 == 1) return hi;
  return 0.5 * (hi + *std::max_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid)));
}

}  // namespace hatano

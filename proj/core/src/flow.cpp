#include "hatano/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "hatano/csv.hpp"
#include "hatano/errors.hpp"

namespace hatano {

namespace {

constexpr double kWindowFloor = 1e-6;
constexpr double kWindowFactor = 10.0;

Complex to_complex(const ComplexDD& z) { return {z.re.to_double(), z.im.to_double()}; }

ComplexDD upper(const ComplexDD& z) { return z.im.hi() < 0.0 ? conj(z) : z; }

struct PairTrack {
  std::size_t tp = 0;
  double birth_g = 0.0;
  std::vector<std::size_t> steps;  // grid indices where the pair is tracked
};

void check_grid(std::span<const double> g) {
  if (g.empty() || g.front() != 0.0) throw InvalidArgument("flow: g grid must start at 0");
  for (std::size_t i = 1; i < g.size(); ++i)
    if (!(g[i] > g[i - 1])) throw InvalidArgument("flow: g grid must be strictly increasing");
}

}  // namespace

std::vector<Complex> SpectrumFlow::snapshot(std::size_t i) const {
  std::vector<Complex> out;
  for (std::size_t j = 0; j < n; ++j) out.push_back(trajectories[j][i]);
  sort_complex(out);
  return out;
}

std::string SpectrumFlow::to_csv() const {
  CsvWriter w({"g", "j", "re", "im", "is_real"});
  for (std::size_t i = 0; i < g_grid.size(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      w.row(g_grid[i], j + 1, trajectories[j][i].real(), trajectories[j][i].imag(), static_cast<bool>(is_real[j][i]));
  return w.str();
}

std::string SpectrumFlow::summary_json() const {
  nlohmann::ordered_json out;
  out["n"] = n;
  out["g_grid"] = g_grid;
  nlohmann::ordered_json crit = nlohmann::ordered_json::array(), first = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < n; ++j) {
    crit.push_back(std::isfinite(critical_g[j]) ? nlohmann::ordered_json(critical_g[j]) : nlohmann::ordered_json());
    nlohmann::ordered_json f;
    for (std::size_t i = 0; i < g_grid.size(); ++i)
      if (!is_real[j][i]) {
        f = g_grid[i];
        break;
      }
    first.push_back(f);
  }
  out["critical_g"] = crit;
  out["direction"] = direction;
  out["first_complex_g"] = first;
  return out.dump(2) + "\n";
}

SpectrumFlow flow(const PotentialSample& sample, const BandStructure& bs, std::span<const double> g_grid) {
  check_grid(g_grid);
  const std::size_t n = bs.n;
  const std::size_t m = g_grid.size();

  SpectrumFlow fl;
  fl.n = n;
  fl.g_grid.assign(g_grid.begin(), g_grid.end());
  fl.trajectories.assign(n, std::vector<Complex>(m));
  fl.trajectories_dd.assign(n, std::vector<ComplexDD>(m));
  fl.is_real.assign(n, std::vector<bool>(m, true));
  fl.critical_g = critical_gs(bs);
  fl.direction = bs.direction;

  std::vector<std::optional<DoubleDouble>> current(n);
  for (std::size_t j = 0; j < n; ++j) current[j] = bs.eigenvalues[j];
  std::vector<PairTrack> pairs;

  for (std::size_t i = 0; i < m; ++i) {
    const double g = g_grid[i];
    const SpectralParams params = SpectralParams::make(g, n);
    const DoubleDouble target = params.target_dd();

    std::vector<bool> lost(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      if (!current[j]) continue;
      const auto next = real_eigenvalue(sample, bs, j, target, current[j]);
      if (next)
        current[j] = next;
      else
        lost[j] = true;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!lost[j]) continue;
      const auto tp = bs.positive_end(j);
      if (!tp) throw CountMismatch("outer eigenvalue " + std::to_string(j + 1) + " lost without a turning point");
      const std::size_t other = *tp == j ? j + 1 : j - 1;
      if (!lost[other])
        throw CountMismatch("eigenvalue " + std::to_string(j + 1) + " left the axis at g = " + format_double(g) +
                            " without its partner");
      if (*tp == j) pairs.push_back({*tp, g, {}});
    }
    for (std::size_t j = 0; j < n; ++j)
      if (lost[j]) current[j].reset();

    std::vector<DoubleDouble> reals;
    for (std::size_t j = 0; j < n; ++j)
      if (current[j]) reals.push_back(*current[j]);

    // Predictions: linear secant once two complex points exist, square-root
    // growth away from the turning point for the step after birth.
    std::vector<Complex> predicted(pairs.size());
    std::vector<double> window(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const PairTrack& t = pairs[p];
      const Complex origin(bs.turning_points[t.tp].to_double(), 0.0);
      if (t.steps.empty()) {
        predicted[p] = pair_guess(sample, bs, t.tp, g);
        window[p] = kWindowFactor * std::abs(predicted[p] - origin) + kWindowFloor;
        continue;
      }
      const std::size_t i1 = t.steps.back();
      const Complex p1 = fl.trajectories[t.tp][i1];
      double jump = 0.0;
      Complex pred = p1;
      if (t.steps.size() >= 2) {
        const std::size_t i2 = t.steps[t.steps.size() - 2];
        const Complex p2 = fl.trajectories[t.tp][i2];
        const Complex secant = (p1 - p2) * ((g - g_grid[i1]) / (g_grid[i1] - g_grid[i2]));
        pred = p1 + secant;
        jump = std::abs(secant);
      }
      const double gc = fl.critical_g[t.tp];
      const double d1 = g_grid[i1] - gc;
      if (d1 > 0.0) {
        const Complex root_model = origin + (p1 - origin) * std::sqrt((g - gc) / d1);
        jump = std::max(jump, std::abs(root_model - p1));
        if (t.steps.size() < 2) pred = root_model;
      } else {
        jump = std::max(jump, std::abs(p1 - origin));
      }
      predicted[p] = pred;
      window[p] = kWindowFactor * jump + kWindowFloor;
    }

    std::vector<ComplexDD> solved = solve_pairs(sample, target, reals, predicted);
    for (ComplexDD& z : solved) z = upper(z);

    // Greedy matching of solutions to predictions by distance.
    std::vector<std::tuple<double, std::size_t, std::size_t>> cand;
    for (std::size_t p = 0; p < pairs.size(); ++p)
      for (std::size_t s = 0; s < solved.size(); ++s)
        cand.emplace_back(std::abs(to_complex(solved[s]) - predicted[p]), p, s);
    std::sort(cand.begin(), cand.end());
    std::vector<int> match(pairs.size(), -1);
    std::vector<bool> used(solved.size(), false);
    for (const auto& [d, p, s] : cand) {
      if (match[p] >= 0 || used[s]) continue;
      match[p] = static_cast<int>(s);
      used[s] = true;
    }

    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const ComplexDD& z = solved[static_cast<std::size_t>(match[p])];
      const double dist = std::abs(to_complex(z) - predicted[p]);
      if (!(dist <= window[p]))
        throw ContinuityBreak("pair born at turning point " + std::to_string(pairs[p].tp + 1) + ": no eigenvalue within " +
                              format_double(window[p]) + " of the prediction at g = " + format_double(g) +
                              " (nearest at distance " + format_double(dist) + ")");
      const std::size_t a = pairs[p].tp;
      fl.trajectories_dd[a][i] = z;
      fl.trajectories_dd[a + 1][i] = conj(z);
      fl.trajectories[a][i] = to_complex(z);
      fl.trajectories[a + 1][i] = to_complex(conj(z));
      fl.is_real[a][i] = false;
      fl.is_real[a + 1][i] = false;
      pairs[p].steps.push_back(i);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!current[j]) continue;
      fl.trajectories_dd[j][i] = ComplexDD(*current[j]);
      fl.trajectories[j][i] = Complex(current[j]->to_double(), 0.0);
    }
  }
  return fl;
}

SpectrumFlow flow(const PotentialSample& sample, std::span<const double> g_grid, Precision precision) {
  return flow(sample, band_structure(sample, precision), g_grid);
}

std::vector<double> default_flow_grid(const BandStructure& bs, const GammaProfile& gamma) {
  double gmax = 0.0;
  for (const DoubleDouble& lam : bs.eigenvalues) gmax = std::max(gmax, gamma(lam.to_double()));
  double top = std::min(1.2 * gmax, 2.0);
  if (!(top > 0.0)) top = 2.0;
  std::vector<double> grid(64);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = top * static_cast<double>(i) / 63.0;
  return grid;
}

}  // namespace hatano

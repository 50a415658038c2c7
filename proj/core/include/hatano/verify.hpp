#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hatano/bands.hpp"
#include "hatano/flow.hpp"
#include "hatano/spectrum.hpp"
#include "hatano/transfer.hpp"

namespace hatano {

enum class CheckStatus { pass, fail, inconclusive, skipped, not_applicable };

std::string_view to_string(CheckStatus s);
CheckStatus check_status_from_string(std::string_view s);  // throws SchemaError

/// One confrontation of a computed quantity with an inequality. Margins are
/// signed slack, positive when the inequality holds; inequalities between
/// exponentially large or small quantities use log-ratio margins.
struct CheckRecord {
  std::string statement_id;
  std::string sample_id;
  std::optional<int> j;  // 1-based
  std::optional<double> g;
  std::optional<double> epsilon;
  double margin = 0.0;
  bool passed = false;
  CheckStatus status = CheckStatus::fail;
};

/// Allowed negative margin for a statement; 1e-9 for the deterministic
/// inequalities and for the level identity, 0 otherwise.
double tolerance(std::string_view statement_id);

/// passed = margin >= -tolerance(id); status pass/fail from `passed` unless
/// |margin| < uncertainty (inconclusive).
CheckRecord make_record(std::string statement_id, std::string sample_id, std::optional<int> j,
                        std::optional<double> g, std::optional<double> epsilon, double margin,
                        double uncertainty = 0.0);

namespace stmt {
inline constexpr std::string_view kDiscIdentity = "disc.identity";
inline constexpr std::string_view kDiscOracle = "disc.oracle";
inline constexpr std::string_view kDiscOracleRoot = "disc.oracle_root";
inline constexpr std::string_view kThmReal = "thm1.real";
inline constexpr std::string_view kThmUpper = "thm1.upper";
inline constexpr std::string_view kThmLower = "thm1.lower";
inline constexpr std::string_view kLemma2 = "lemma2";
inline constexpr std::string_view kLastDerivative = "non:03";
inline constexpr std::string_view kMarkov = "markov";
inline constexpr std::string_view kTurningPoint = "non:12";
inline constexpr std::string_view kTurningPointChain = "non:01";
inline constexpr std::string_view kRootGap = "non:05";
inline constexpr std::string_view kDerivativeLd = "non:13";
inline constexpr std::string_view kSpacing = "lemma5";
inline constexpr std::string_view kCoshBound = "non:15";
inline constexpr std::string_view kBandwidthUpper = "prop3.upper";
inline constexpr std::string_view kCriticalG = "gc.lyapunov";
}  // namespace stmt

/// Eigenvalue-equation residual per eigenvalue of eigvals_g; for n <= 12
/// also the charpoly oracle roots and their Hausdorff distance to
/// eigvals_g (disc.oracle, margin 1e-8 - distance).
std::vector<CheckRecord> check_disc_identity(const PotentialSample& sample, double g,
                                             const std::string& sample_id = "");

/// Three records (thm1.real, thm1.upper, thm1.lower) per j with
/// g <= gamma(lambda_j(0)) - epsilon. Margins: critical_g - g for reality,
/// log ratios for the bounds. Differences below the working precision are
/// recorded as skipped.
std::vector<CheckRecord> check_theorem_bounds(const PotentialSample& sample, const BandStructure& bs, double g,
                                              double epsilon, const GammaProfile& gamma,
                                              const std::string& sample_id = "");

struct RateRecord {
  int j = 0;  // 1-based
  double g = 0.0;
  /// -(1/n) log|lambda_j(g) - lambda_j(0)|; +inf at g = 0, NaN if not real.
  double rate = 0.0;
  double predicted = 0.0;
};

struct RateFit {
  int j = 0;
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// Rate records for index j (0-based) on the part of g_grid inside
/// [0, gamma(lambda_j(0)) - epsilon].
std::vector<RateRecord> rate_profile(const PotentialSample& sample, const BandStructure& bs, std::size_t j,
                                     std::span<const double> g_grid, const GammaProfile& gamma, double epsilon);

/// Least squares of rate against g over the finite records; nothing if
/// fewer than two points remain.
std::optional<RateFit> fit_rate(std::span<const RateRecord> records);

/// 0.05, 0.075, ... up to gamma_j - epsilon.
std::vector<double> rate_grid(double gamma_j, double epsilon, double start = 0.05, double step = 0.025);

/// Lemma 2 at points_per_stretch interior points of every admissible
/// interval, plus Last's derivative bound per j.
std::vector<CheckRecord> check_last_inequality(const PotentialSample& sample, const BandStructure& bs,
                                               std::size_t points_per_stretch, const std::string& sample_id = "");

/// Markov's inequality for Delta_n on [a, b]: maxima over 512 Chebyshev
/// points (endpoints included) refined by Brent maximization.
CheckRecord check_markov(const PotentialSample& sample, double a, double b, Precision precision = Precision::standard,
                         const std::string& sample_id = "");

/// Per turning point: non:12 and the explicit chain non:01; per sample the
/// root gap record non:05. Records whose gamma_max is statistically zero are
/// not applicable.
std::vector<CheckRecord> check_turning_point_bound(const PotentialSample& sample, const BandStructure& bs,
                                                   double epsilon, const GammaProfile& gamma,
                                                   const std::string& sample_id = "");

/// epsilon n - max over 512 points of K of (log|Delta_n'| - n gamma).
CheckRecord check_derivative_ld(const PotentialSample& sample, const BandStructure& bs, const GammaProfile& gamma,
                                double epsilon, const std::string& sample_id = "");

/// One lemma5 record per sample: log(min_eig_gap) + epsilon n. Throws
/// DegenerateSpec if any sample has a point-mass law.
std::vector<CheckRecord> check_spacings(std::span<const PotentialSample> ensemble, double epsilon,
                                        std::span<const std::string> sample_ids = {});
CheckRecord check_spacing(const BandStructure& bs, double epsilon, const std::string& sample_id = "");

/// Per index whose eigenvalue is real at g and moves toward a turning point:
/// log(2cosh(ng)) + log|B_j| - log|lambda_j(g) - lambda_j(0)|.
std::vector<CheckRecord> check_intermediate_cosh_bound(const PotentialSample& sample, const BandStructure& bs,
                                                       double g, const std::string& sample_id = "");

/// prop3.upper per j: -log|B_j| - (gamma(lambda_j(0)) - epsilon) n.
std::vector<CheckRecord> check_bandwidth(const BandStructure& bs, double epsilon, const GammaProfile& gamma,
                                         const std::string& sample_id = "");

/// gc.lyapunov per inner j: critical_g(j) - (gamma(lambda_j(0)) - epsilon).
std::vector<CheckRecord> check_critical_g(const BandStructure& bs, double epsilon, const GammaProfile& gamma,
                                          const std::string& sample_id = "");

/// |-(1/n) log|B_j| - gamma(lambda_j(0))| for every j.
std::vector<double> bandwidth_rate_deviation(const BandStructure& bs, const GammaProfile& gamma);

struct StatementSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t inconclusive = 0;
  std::size_t skipped = 0;
  std::size_t not_applicable = 0;
  /// passed / (passed + failed); NaN when nothing is conclusive.
  double pass_frequency() const;
};

std::map<std::string, StatementSummary> summarize(std::span<const CheckRecord> records);

/// Fraction of (sample, j, g) keys whose thm1.upper and thm1.lower records
/// both pass, among keys where both are conclusive.
double joint_bound_frequency(std::span<const CheckRecord> records);

/// Columns statement_id,sample_id,j,g,epsilon,margin,passed,status.
std::string records_csv(std::span<const CheckRecord> records);
std::vector<CheckRecord> records_from_csv(const std::string& text);  // throws SchemaError
std::string summary_json(const std::map<std::string, StatementSummary>& summary);

double median(std::vector<double> xs);

}  // namespace hatano

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hatano {

/// Counter-based generator: the k-th draw of stream s is a pure function of
/// (seed, s, k), namely the SplitMix64 finalizer applied to a Weyl sequence
/// keyed by the seed and stream.
class CounterRng {
 public:
  static constexpr std::string_view kGeneratorId = "splitmix64-counter/v1";

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);
/// Seed of the index-th member of an ensemble rooted at `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

struct Uniform {
  double a = 0.0;
  double b = 1.0;
};
/// Takes +w with probability p and -w otherwise.
struct Bernoulli {
  double p = 0.5;
  double w = 1.0;
};
struct Discrete {
  std::vector<double> values;
  std::vector<double> weights;
};
struct Constant {
  double c = 0.0;
};

/// Law of a single site potential v_k. Validated on construction.
class DistributionSpec {
 public:
  using Law = std::variant<Uniform, Bernoulli, Discrete, Constant>;

  DistributionSpec() : DistributionSpec(Constant{}) {}
  explicit DistributionSpec(Law law);  // throws InvalidSpec

  static DistributionSpec uniform(double a, double b) { return DistributionSpec(Uniform{a, b}); }
  static DistributionSpec bernoulli(double p, double w) { return DistributionSpec(Bernoulli{p, w}); }
  static DistributionSpec discrete(std::vector<double> v, std::vector<double> w) {
    return DistributionSpec(Discrete{std::move(v), std::move(w)});
  }
  static DistributionSpec constant(double c) { return DistributionSpec(Constant{c}); }

  const Law& law() const { return law_; }
  /// sup |v| over the support.
  double bound() const { return bound_; }
  /// True for point masses; such laws violate the nondegeneracy that
  /// positivity of the Lyapunov exponent needs.
  bool degenerate() const;
  bool symmetric() const;
  std::string describe() const;

  double draw(CounterRng& rng) const;

  std::string to_json() const;
  static DistributionSpec from_json(std::string_view text);  // throws SchemaError / InvalidSpec

  friend bool operator==(const DistributionSpec& a, const DistributionSpec& b);

 private:
  Law law_;
  double bound_ = 0.0;
};

/// One disorder realization v_1..v_n on the ring.
struct PotentialSample {
  std::size_t n = 0;
  DistributionSpec spec;
  std::uint64_t seed = 0;
  std::string generator_id;
  std::vector<double> values;

  /// Hand-written potential; its law is the empirical distribution of the
  /// values and generator_id is "manual".
  static PotentialSample manual(std::vector<double> values);

  friend bool operator==(const PotentialSample&, const PotentialSample&) = default;
};

bool operator==(const Uniform&, const Uniform&);
bool operator==(const Bernoulli&, const Bernoulli&);
bool operator==(const Discrete&, const Discrete&);
bool operator==(const Constant&, const Constant&);

/// n >= 2 i.i.d. draws from stream 0 of CounterRng(seed). Throws InvalidSpec.
PotentialSample sample_potential(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

/// Draws `count` values from a given stream (used by the Monte Carlo code).
std::vector<double> draw_values(const DistributionSpec& spec, std::size_t count, std::uint64_t seed,
                                std::uint64_t stream);

std::string sample_to_json(const PotentialSample& sample);
PotentialSample sample_from_json(std::string_view text);  // throws SchemaError
void save_sample(const PotentialSample& sample, const std::filesystem::path& path);  // throws IoError
PotentialSample load_sample(const std::filesystem::path& path);  // throws IoError, SchemaError

/// C99 hexadecimal float text ("0x1.8p+1") and its exact inverse.
std::string to_hexfloat(double x);
double from_hexfloat(std::string_view s);  // throws SchemaError

}  // namespace hatano

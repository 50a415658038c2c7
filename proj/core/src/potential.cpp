#include "hatano/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "hatano/errors.hpp"

namespace hatano {

using nlohmann::json;

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(base ^ mix64(index + 0x632be59bd9b4e019ULL));
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed + mix64(stream ^ 0xd1b54a32d192ed03ULL))) {}

std::uint64_t CounterRng::next() {
  constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  return mix64(key_ + (++counter_) * kGolden);
}

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

bool operator==(const Uniform& x, const Uniform& y) { return x.a == y.a && x.b == y.b; }
bool operator==(const Bernoulli& x, const Bernoulli& y) { return x.p == y.p && x.w == y.w; }
bool operator==(const Discrete& x, const Discrete& y) { return x.values == y.values && x.weights == y.weights; }
bool operator==(const Constant& x, const Constant& y) { return x.c == y.c; }
bool operator==(const DistributionSpec& a, const DistributionSpec& b) { return a.law_ == b.law_; }

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool finite(double x) { return std::isfinite(x); }

}  // namespace

DistributionSpec::DistributionSpec(Law law) : law_(std::move(law)) {
  bound_ = std::visit(
      overloaded{
          [](const Uniform& u) {
            if (!finite(u.a) || !finite(u.b) || !(u.a < u.b)) throw InvalidSpec("uniform(a, b) requires finite a < b");
            return std::max(std::abs(u.a), std::abs(u.b));
          },
          [](const Bernoulli& b) {
            if (!(b.p >= 0.0 && b.p <= 1.0) || !finite(b.w)) throw InvalidSpec("bernoulli(p, w) requires p in [0, 1]");
            return std::abs(b.w);
          },
          [](const Discrete& d) {
            if (d.values.empty() || d.values.size() != d.weights.size())
              throw InvalidSpec("discrete law needs equally many values and weights");
            double total = 0.0, bound = 0.0;
            for (std::size_t i = 0; i < d.values.size(); ++i) {
              if (!finite(d.values[i]) || !(d.weights[i] >= 0.0)) throw InvalidSpec("discrete law: bad value or weight");
              total += d.weights[i];
              bound = std::max(bound, std::abs(d.values[i]));
            }
            if (std::abs(total - 1.0) > 1e-12) throw InvalidSpec("discrete weights must sum to 1");
            return bound;
          },
          [](const Constant& c) {
            if (!finite(c.c)) throw InvalidSpec("constant potential must be finite");
            return std::abs(c.c);
          },
      },
      law_);
}

bool DistributionSpec::degenerate() const {
  return std::visit(overloaded{
                        [](const Uniform&) { return false; },
                        [](const Bernoulli& b) { return b.p == 0.0 || b.p == 1.0 || b.w == 0.0; },
                        [](const Discrete& d) {
                          std::size_t support = 0;
                          double first = 0.0;
                          for (std::size_t i = 0; i < d.values.size(); ++i) {
                            if (d.weights[i] <= 0.0) continue;
                            if (support == 0) first = d.values[i];
                            if (support == 0 || d.values[i] != first) ++support;
                          }
                          return support <= 1;
                        },
                        [](const Constant&) { return true; },
                    },
                    law_);
}

bool DistributionSpec::symmetric() const {
  return std::visit(overloaded{
                        [](const Uniform& u) { return u.a == -u.b; },
                        [](const Bernoulli& b) { return b.p == 0.5; },
                        [](const Discrete&) { return false; },
                        [](const Constant& c) { return c.c == 0.0; },
                    },
                    law_);
}

std::string DistributionSpec::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Uniform& u) { os << "uniform(" << u.a << ", " << u.b << ")"; },
                 [&](const Bernoulli& b) { os << "bernoulli(p=" << b.p << ", w=" << b.w << ")"; },
                 [&](const Discrete& d) { os << "discrete(" << d.values.size() << " atoms)"; },
                 [&](const Constant& c) { os << "constant(" << c.c << ")"; },
             },
             law_);
  return os.str();
}

double DistributionSpec::draw(CounterRng& rng) const {
  return std::visit(overloaded{
                        [&](const Uniform& u) { return u.a + (u.b - u.a) * rng.uniform(); },
                        [&](const Bernoulli& b) { return rng.uniform() < b.p ? b.w : -b.w; },
                        [&](const Discrete& d) {
                          const double u = rng.uniform();
                          double acc = 0.0;
                          for (std::size_t i = 0; i < d.values.size(); ++i) {
                            acc += d.weights[i];
                            if (u < acc) return d.values[i];
                          }
                          for (std::size_t i = d.values.size(); i-- > 0;)
                            if (d.weights[i] > 0.0) return d.values[i];
                          return d.values.back();
                        },
                        [](const Constant& c) { return c.c; },
                    },
                    law_);
}

namespace {

json spec_json(const DistributionSpec& spec) {
  return std::visit(overloaded{
                        [](const Uniform& u) { return json{{"kind", "uniform"}, {"a", u.a}, {"b", u.b}}; },
                        [](const Bernoulli& b) { return json{{"kind", "bernoulli"}, {"p", b.p}, {"w", b.w}}; },
                        [](const Discrete& d) {
                          return json{{"kind", "discrete"}, {"values", d.values}, {"weights", d.weights}};
                        },
                        [](const Constant& c) { return json{{"kind", "constant"}, {"c", c.c}}; },
                    },
                    spec.law());
}

DistributionSpec spec_from(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform") return DistributionSpec::uniform(j.at("a").get<double>(), j.at("b").get<double>());
    if (kind == "bernoulli") return DistributionSpec::bernoulli(j.at("p").get<double>(), j.at("w").get<double>());
    if (kind == "discrete")
      return DistributionSpec::discrete(j.at("values").get<std::vector<double>>(),
                                        j.at("weights").get<std::vector<double>>());
    if (kind == "constant") return DistributionSpec::constant(j.at("c").get<double>());
    throw SchemaError("unknown distribution kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw SchemaError(std::string("distribution spec: ") + e.what());
  }
}

}  // namespace

std::string DistributionSpec::to_json() const { return spec_json(*this).dump(); }

DistributionSpec DistributionSpec::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("distribution spec is not valid JSON: ") + e.what());
  }
  return spec_from(j);
}

PotentialSample PotentialSample::manual(std::vector<double> values) {
  PotentialSample s;
  s.n = values.size();
  std::vector<double> w(values.size(), 1.0 / static_cast<double>(values.size()));
  // Weights must sum to one exactly enough for validation.
  if (!w.empty()) w.back() = 1.0 - std::accumulate(w.begin(), w.end() - 1, 0.0);
  s.spec = DistributionSpec::discrete(values, std::move(w));
  s.generator_id = "manual";
  s.values = std::move(values);
  return s;
}

std::vector<double> draw_values(const DistributionSpec& spec, std::size_t count, std::uint64_t seed,
                                std::uint64_t stream) {
  CounterRng rng(seed, stream);
  std::vector<double> v(count);
  for (auto& x : v) x = spec.draw(rng);
  return v;
}

PotentialSample sample_potential(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidSpec("ring length must be at least 2, got " + std::to_string(n));
  PotentialSample s;
  s.n = n;
  s.spec = spec;
  s.seed = seed;
  s.generator_id = std::string(CounterRng::kGeneratorId);
  s.values = draw_values(spec, n, seed, 0);
  return s;
}

std::string to_hexfloat(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

double from_hexfloat(std::string_view s) {
  const std::string str(s);
  char* end = nullptr;
  const double x = std::strtod(str.c_str(), &end);
  if (str.empty() || end != str.c_str() + str.size()) throw SchemaError("not a float literal: '" + str + "'");
  return x;
}

std::string sample_to_json(const PotentialSample& sample) {
  json values = json::array();
  for (double v : sample.values) values.push_back(to_hexfloat(v));
  const json j{{"n", sample.n},
               {"spec", spec_json(sample.spec)},
               {"seed", sample.seed},
               {"generator_id", sample.generator_id},
               {"values", values}};
  return j.dump(2) + "\n";
}

PotentialSample sample_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("sample file is not valid JSON: ") + e.what());
  }
  PotentialSample s;
  try {
    s.n = j.at("n").get<std::size_t>();
    s.spec = spec_from(j.at("spec"));
    s.seed = j.at("seed").get<std::uint64_t>();
    s.generator_id = j.at("generator_id").get<std::string>();
    for (const auto& v : j.at("values")) s.values.push_back(from_hexfloat(v.get<std::string>()));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("sample schema: ") + e.what());
  }
  if (s.values.size() != s.n)
    throw SchemaError("sample declares n = " + std::to_string(s.n) + " but holds " + std::to_string(s.values.size()) +
                      " values");
  for (double v : s.values)
    if (!(std::abs(v) <= s.spec.bound())) throw SchemaError("sample value " + to_hexfloat(v) + " exceeds spec bound");
  return s;
}

void save_sample(const PotentialSample& sample, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << sample_to_json(sample);
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

PotentialSample load_sample(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return sample_from_json(buf.str());
}

}  // namespace hatano

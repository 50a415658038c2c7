#include "hatano/thouless.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "hatano/bands.hpp"
#include "hatano/errors.hpp"
#include "hatano/parallel.hpp"

namespace hatano {

namespace {
constexpr double kLogFloor = -690.77552789821368;  // log(1e-300)
}

double thouless_term(const PotentialSample& sample, double E) {
  double sum = 0.0;
  for (double lam : floquet_eigenvalues(sample.values, 0.0)) {
    const double d = std::abs(E - lam);
    sum += d > 1e-300 ? std::log(d) : kLogFloor;
  }
  return sum / static_cast<double>(sample.n);
}

ThoulessEstimate thouless_gamma(std::span<const PotentialSample> ensemble, double E) {
  if (ensemble.size() < kThoulessMinSamples)
    throw InvalidArgument("thouless_gamma: need at least " + std::to_string(kThoulessMinSamples) + " samples, got " +
                          std::to_string(ensemble.size()));
  const std::size_t n = ensemble.front().n;
  for (const PotentialSample& s : ensemble) {
    if (s.n < kThoulessMinN) throw InvalidArgument("thouless_gamma: ring length must be at least 40");
    if (!(s.spec == ensemble.front().spec) || s.n != n)
      throw InvalidArgument("thouless_gamma: ensemble members must share law and ring length");
  }
  std::vector<double> terms(ensemble.size());
  parallel_for(ensemble.size(), [&](std::size_t i) { terms[i] = thouless_term(ensemble[i], E); });

  const double m = static_cast<double>(terms.size());
  const double mean = std::accumulate(terms.begin(), terms.end(), 0.0) / m;
  double ss = 0.0;
  for (double t : terms) ss += (t - mean) * (t - mean);
  return {mean, std::sqrt(ss / (m - 1.0) / m), terms.size()};
}

}  // namespace hatano

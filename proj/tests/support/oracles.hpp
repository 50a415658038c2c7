#pragma once

#include <array>
#include <filesystem>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "hatano/potential.hpp"

namespace hatano::oracle {

using Rational = boost::multiprecision::cpp_rational;
using Float50 = boost::multiprecision::cpp_bin_float_50;

inline Rational exact(double x) { return Rational(x); }

inline std::vector<Rational> exact(const std::vector<double>& xs) {
  std::vector<Rational> out;
  for (double x : xs) out.push_back(exact(x));
  return out;
}

inline double to_double(const Rational& r) { return static_cast<double>(r); }

/// A_{E,n} ... A_{E,1} in exact arithmetic, row-major.
inline std::array<Rational, 4> exact_transfer_product(const std::vector<Rational>& v, const Rational& E) {
  std::array<Rational, 4> p{1, 0, 0, 1};
  for (const Rational& vk : v) {
    const Rational a = E - vk;
    p = {a * p[0] - p[2], a * p[1] - p[3], p[0], p[1]};
  }
  return p;
}

/// Coefficients of Delta_n, constant term first, by the polynomial
/// recurrence on the transfer product.
inline std::vector<Rational> exact_disc_coeffs(const std::vector<Rational>& v) {
  using Poly = std::vector<Rational>;
  auto mul_e = [](const Poly& p, const Rational& shift) {
    Poly out(p.size() + 1, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
      out[i + 1] += p[i];
      out[i] -= shift * p[i];
    }
    return out;
  };
  auto sub = [](Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
  };
  // Row-major product entries as polynomials.
  Poly p00{1}, p01{0}, p10{0}, p11{1};
  for (const Rational& vk : v) {
    Poly n00 = sub(mul_e(p00, vk), p10), n01 = sub(mul_e(p01, vk), p11);
    p10 = p00;
    p11 = p01;
    p00 = std::move(n00);
    p01 = std::move(n01);
  }
  Poly tr = p00;
  if (tr.size() < p11.size()) tr.resize(p11.size(), Rational(0));
  for (std::size_t i = 0; i < p11.size(); ++i) tr[i] += p11[i];
  while (tr.size() > 1 && tr.back() == 0) tr.pop_back();
  return tr;
}

inline Rational poly_eval(const std::vector<Rational>& c, const Rational& x) {
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline std::vector<Rational> poly_derivative(const std::vector<Rational>& c) {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<int>(i));
  if (d.empty()) d.push_back(0);
  return d;
}

/// det(zI - H) for the ring with diagonal v, forward hopping t and backward
/// hopping 1/t (the n = 2 hoppings add), by Faddeev-LeVerrier.
inline std::vector<Rational> exact_charpoly(const std::vector<Rational>& v, const Rational& t) {
  const std::size_t n = v.size();
  using Matrix = std::vector<std::vector<Rational>>;
  Matrix h(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t k = 0; k < n; ++k) {
    h[k][k] = v[k];
    if (n > 1) {
      h[k][(k + 1) % n] += t;
      h[(k + 1) % n][k] += 1 / t;
    }
  }
  auto mul = [n](const Matrix& a, const Matrix& b) {
    Matrix c(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (a[i][k] != 0)
          for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  // c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k) / k.
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  Matrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix am = mul(h, m);
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = am;
    const Matrix a_m = mul(h, m);
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += a_m[i][i];
    c[n - k] = -tr / static_cast<int>(k);
  }
  return c;
}

inline std::filesystem::path source_dir() { return HATANO_TEST_SOURCE_DIR; }
inline std::filesystem::path fixture(const std::string& name) { return source_dir() / "fixtures" / name; }

/// The shipped four-site fixture (0.3, -0.1, 0.7, 0.2).
inline PotentialSample fixture_n4() { return load_sample(fixture("n4.json")); }

}  // namespace hatano::oracle

#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "hatano/numerics/double_double.hpp"

namespace hatano {

using Complex = std::complex<double>;

/// Returns the Newton correction p(z) / p'(z) of the target function.
using NewtonStep = std::function<Complex(Complex)>;
using NewtonStepDD = std::function<ComplexDD(const ComplexDD&)>;

struct AberthOptions {
  int max_iter = 200;
  /// Relative size of the last correction below which a root is frozen.
  double tol = 1e-15;
  /// Roots live in the upper half plane and every root's conjugate is an
  /// implicit partner (real polynomial with known complex pairs).
  bool mirror = false;
};

struct AberthResult {
  std::vector<Complex> roots;
  int iterations = 0;
  bool converged = false;
};

/// Simultaneous Aberth-Ehrlich iteration. `fixed` roots are already known:
/// they repel the free roots (implicit deflation) but are not moved.
AberthResult aberth(const NewtonStep& step, std::vector<Complex> init, std::span<const Complex> fixed,
                    const AberthOptions& opts);

/// Same iteration in double-double arithmetic, used for polishing.
std::vector<ComplexDD> aberth_dd(const NewtonStepDD& step, std::vector<ComplexDD> init,
                                 std::span<const ComplexDD> fixed, int iterations, bool mirror);

/// Horner evaluation of p and p' (coefficients constant -> leading).
void horner(std::span<const DoubleDouble> coeffs, const ComplexDD& z, ComplexDD& p, ComplexDD& dp);
/// sum_i |a_i| |z|^i, the scale against which residuals are judged.
double horner_scale(std::span<const DoubleDouble> coeffs, double abs_z);

/// All roots (with multiplicity) of the real polynomial with coefficients
/// ordered constant -> leading. Complex roots come in exact conjugate pairs.
/// Each returned z satisfies |p(z)| <= tol * sum_i |a_i||z|^i.
/// Throws InvalidArgument for a zero leading coefficient or degree < 1 and
/// NoConvergence (with the worst residual) when the iteration cap is hit.
std::vector<Complex> poly_roots(std::span<const DoubleDouble> coeffs, double tol = 1e-24);

/// Hausdorff distance between two finite point sets in the complex plane.
double hausdorff(std::span<const Complex> a, std::span<const Complex> b);

/// Orders by (real part, imaginary part).
void sort_complex(std::vector<Complex>& zs);

}  // namespace hatano

#ifndef OPZ_POLYNOMIAL_HPP
#define OPZ_POLYNOMIAL_HPP

#include <span>
#include <vector>

#include "opz/matrix.hpp"

namespace opz {

/// Dense monomial-basis polynomial, coefficients in ascending order of power.
using Poly = std::vector<cplx>;

cplx poly_eval(std::span<const cplx> coeffs, cplx z);

/// Evaluates a polynomial with real coefficients at a real point.
/// Imaginary parts of the coefficients are ignored.
double poly_eval_real(std::span<const cplx> coeffs, double x);

Poly poly_derivative(std::span<const cplx> coeffs);

/// Product with compensated (Neumaier) summation of each output coefficient.
Poly poly_multiply(std::span<const cplx> x, std::span<const cplx> y);

Poly poly_add(std::span<const cplx> x, std::span<const cplx> y);

/// Drops trailing coefficients that are exactly zero. Keeps at least one entry.
void poly_trim(Poly& coeffs);

/// Degree after trimming exact zeros; -1 for the zero polynomial.
int poly_degree(std::span<const cplx> coeffs);

/// Real roots of a real polynomial whose roots are all real, sorted ascending.
/// Roots are bracketed between consecutive critical points (found recursively
/// from the derivative) and refined by bisection. A root sitting on a critical
/// point within rounding is returned twice.
std::vector<double> real_rooted_roots(std::span<const cplx> coeffs);

/// Cauchy bound: every root has modulus below the returned value.
double cauchy_root_bound(std::span<const cplx> coeffs);

/// 2x2 matrix of polynomials.
struct PolyMatrix {
  Poly e11{cplx{1.0}}, e12{cplx{0.0}}, e21{cplx{0.0}}, e22{cplx{1.0}};

  friend PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y);

  Poly trace() const { return poly_add(e11, e22); }
  Mat2 eval(cplx z) const { return {poly_eval(e11, z), poly_eval(e12, z), poly_eval(e21, z), poly_eval(e22, z)}; }
};

}  // namespace opz

#endif  // OPZ_POLYNOMIAL_HPP

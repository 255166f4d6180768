#include "opz/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace opz {

namespace {

// Neumaier-compensated complex accumulator.
struct CompensatedSum {
  double re = 0, re_c = 0, im = 0, im_c = 0;

  static void add(double& s, double& c, double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  }
  void add(cplx v) {
    add(re, re_c, v.real());
    add(im, im_c, v.imag());
  }
  cplx value() const { return {re + re_c, im + im_c}; }
};

double bisect_root(std::span<const cplx> coeffs, double lo, double hi, double flo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = poly_eval_real(coeffs, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double abs_scale(std::span<const cplx> coeffs, double x) {
  double s = 0.0;
  const double ax = std::abs(x);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * ax + std::abs(it->real());
  return s;
}

}  // namespace

cplx poly_eval(std::span<const cplx> coeffs, cplx z) {
  cplx acc{0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double poly_eval_real(std::span<const cplx> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + it->real();
  return acc;
}

Poly poly_derivative(std::span<const cplx> coeffs) {
  if (coeffs.size() <= 1) return {cplx{0.0}};
  Poly out(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k) out[k - 1] = static_cast<double>(k) * coeffs[k];
  return out;
}

Poly poly_multiply(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.empty() || y.empty()) return {cplx{0.0}};
  Poly out(x.size() + y.size() - 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    CompensatedSum acc;
    const std::size_t lo = k >= y.size() - 1 ? k - (y.size() - 1) : 0;
    const std::size_t hi = std::min(k, x.size() - 1);
    for (std::size_t i = lo; i <= hi; ++i) acc.add(x[i] * y[k - i]);
    out[k] = acc.value();
  }
  return out;
}

Poly poly_add(std::span<const cplx> x, std::span<const cplx> y) {
  Poly out(std::max(x.size(), y.size()), cplx{0.0});
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
  return out;
}

void poly_trim(Poly& coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == cplx{0.0}) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(cplx{0.0});
}

int poly_degree(std::span<const cplx> coeffs) {
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    if (coeffs[k] != cplx{0.0}) return static_cast<int>(k);
  }
  return -1;
}

double cauchy_root_bound(std::span<const cplx> coeffs) {
  const int d = poly_degree(coeffs);
  if (d <= 0) return 1.0;
  const double lead = std::abs(coeffs[static_cast<std::size_t>(d)]);
  double m = 0.0;
  for (int k = 0; k < d; ++k) m = std::max(m, std::abs(coeffs[static_cast<std::size_t>(k)]) / lead);
  return 1.0 + m;
}

std::vector<double> real_rooted_roots(std::span<const cplx> coeffs) {
  const int d = poly_degree(coeffs);
  if (d <= 0) return {};
  std::span<const cplx> c = coeffs.first(static_cast<std::size_t>(d) + 1);
  if (d == 1) return {-c[0].real() / c[1].real()};

  const Poly deriv = poly_derivative(c);
  const std::vector<double> crit = real_rooted_roots(deriv);
  const double bound = cauchy_root_bound(c);

  std::vector<double> knots;
  knots.reserve(crit.size() + 2);
  knots.push_back(-bound);
  for (double x : crit) knots.push_back(std::clamp(x, -bound, bound));
  knots.push_back(bound);

  std::vector<double> roots;
  constexpr double kEps = 2.220446049250313e-16;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double lo = knots[i];
    const double hi = knots[i + 1];
    const double flo = poly_eval_real(c, lo);
    const double fhi = poly_eval_real(c, hi);
    if (i > 0 && std::abs(flo) <= 64 * kEps * abs_scale(c, lo)) {
      // Root at a critical point: multiplicity two.
      roots.push_back(lo);
      roots.push_back(lo);
      continue;
    }
    if (hi <= lo) continue;
    if ((flo < 0) != (fhi < 0) && std::abs(fhi) > 64 * kEps * abs_scale(c, hi)) {
      roots.push_back(bisect_root(c, lo, hi, flo));
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y) {
  PolyMatrix out;
  out.e11 = poly_add(poly_multiply(x.e11, y.e11), poly_multiply(x.e12, y.e21));
  out.e12 = poly_add(poly_multiply(x.e11, y.e12), poly_multiply(x.e12, y.e22));
  out.e21 = poly_add(poly_multiply(x.e21, y.e11), poly_multiply(x.e22, y.e21));
  out.e22 = poly_add(poly_multiply(x.e21, y.e12), poly_multiply(x.e22, y.e22));
  poly_trim(out.e11);
  poly_trim(out.e12);
  poly_trim(out.e21);
  poly_trim(out.e22);
  return out;
}

}  // namespace opz

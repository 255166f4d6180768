#include "opz/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opz {

int sturm_count(std::span<const double> diag, std::span<const double> offdiag, double x) {
  constexpr double kTiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double off2 = i == 0 ? 0.0 : offdiag[i - 1] * offdiag[i - 1];
    d = (diag[i] - x) - (i == 0 ? 0.0 : off2 / d);
    if (d == 0.0) d = -kTiny;
    if (d < 0) ++count;
  }
  return count;
}

namespace {

struct Bisector {
  std::span<const double> diag;
  std::span<const double> off;
  std::vector<double>& out;

  void isolate(double lo, double hi, int clo, int chi) {
    if (chi <= clo) return;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      for (int i = clo; i < chi; ++i) out.push_back(mid);
      return;
    }
    if (chi - clo == 1) {
      refine(lo, hi, clo);
      return;
    }
    const int cmid = sturm_count(diag, off, mid);
    isolate(lo, mid, clo, cmid);
    isolate(mid, hi, cmid, chi);
  }

  // Single eigenvalue in [lo, hi): count(lo) == clo, count(hi) == clo + 1.
  void refine(double lo, double hi, int clo) {
    for (int it = 0; it < 2000; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sturm_count(diag, off, mid) > clo) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.push_back(0.5 * (lo + hi));
  }
};

}  // namespace

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag, std::span<const double> offdiag) {
  const std::size_t n = diag.size();
  std::vector<double> out;
  if (n == 0) return out;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) + (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  const double pad = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  lo -= pad;
  hi += pad;
  out.reserve(n);
  Bisector b{diag, offdiag, out};
  b.isolate(lo, hi, sturm_count(diag, offdiag, lo), sturm_count(diag, offdiag, hi));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace opz

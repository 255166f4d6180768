#include "opz/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "opz/error.hpp"
#include "opz/quadrature.hpp"

namespace opz {

namespace {

constexpr double kPi = std::numbers::pi;

// Representative of t inside band j (OPUC angles may need a 2 pi shift).
double lift_into(const Band& b, double t, ModelKind kind) {
  if (kind == ModelKind::Jacobi) return t;
  const double two_pi = 2.0 * kPi;
  double best = t;
  double best_dist = INFINITY;
  for (double c : {t - two_pi, t, t + two_pi, t + 2.0 * two_pi, t - 2.0 * two_pi}) {
    const double dist = std::max({0.0, b.lo - c, c - b.hi});
    if (dist < best_dist) {
      best_dist = dist;
      best = c;
    }
  }
  return best;
}

double k_in_band(const Spectrum& s, int j, double t) {
  const Band& b = s.bands.bands[static_cast<std::size_t>(j)];
  const int p = s.period();
  const double base = static_cast<double>(j) / p;
  const double scale = 1e-13 * std::max(1.0, std::abs(b.lo) + std::abs(b.hi));
  if (t <= b.lo + scale) return base;
  if (t >= b.hi - scale) return static_cast<double>(j + 1) / p;
  const double c = std::clamp(-b.orientation * s.disc.real_value(t) / 2.0, -1.0, 1.0);
  return base + std::acos(c) / (kPi * p);
}

double plane_diameter(const Spectrum& s) {
  return s.kind() == ModelKind::Jacobi ? s.bands.diameter : 2.0;
}

}  // namespace

double k_of(const Spectrum& s, double t) {
  const int j = s.bands.band_of(t, 1e-12);
  if (j < 0) throw Error(ErrorKind::PointNotInBand, "point " + std::to_string(t) + " lies outside every band");
  const Band& b = s.bands.bands[static_cast<std::size_t>(j)];
  return k_in_band(s, j, lift_into(b, t, s.kind()));
}

double k_inverse(const Spectrum& s, int band, double k) {
  const int p = s.period();
  if (band < 0 || band >= p) throw Error(ErrorKind::InvalidArgument, "band index out of range");
  const double klo = static_cast<double>(band) / p;
  const double khi = static_cast<double>(band + 1) / p;
  const double slack = 1e-14;
  if (k < klo - slack || k > khi + slack) {
    throw Error(ErrorKind::InvalidArgument, "k value outside the band's range");
  }
  const Band& b = s.bands.bands[static_cast<std::size_t>(band)];
  if (k <= klo) return b.lo;
  if (k >= khi) return b.hi;
  double lo = b.lo, hi = b.hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (k_in_band(s, band, mid) < k) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double density(const Spectrum& s, double t) {
  const int j = s.bands.band_of(t, 0.0);
  if (j < 0) throw Error(ErrorKind::PointNotInBand, "point " + std::to_string(t) + " lies outside every band");
  const double d = s.disc.real_value(t);
  const double gap = (2.0 - d) * (2.0 + d);
  if (!(gap > 0.0)) throw Error(ErrorKind::DensitySingularity, "density is singular at a band edge");
  return std::abs(s.disc.real_derivative(t)) / (kPi * s.period() * std::sqrt(gap));
}

BandIntegral integrate_dk(const Spectrum& s, const std::function<double(double)>& f, double rel_tol) {
  const int p = s.period();
  auto rule_value = [&](int n) {
    const GaussRule& r = gauss_legendre(n);
    double total = 0.0;
    for (int j = 0; j < p; ++j) {
      const double klo = static_cast<double>(j) / p;
      const double half = 0.5 / p;
      double acc = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const double u = klo + half * (1.0 + r.nodes[i]);
        acc += r.weights[i] * f(k_inverse(s, j, u));
      }
      total += half * acc;
    }
    return total;
  };
  int n = 50;
  double prev = rule_value(n);
  for (int doubling = 0; doubling < 3; ++doubling) {
    n *= 2;
    const double cur = rule_value(n);
    if (std::abs(cur - prev) <= rel_tol * std::max(1.0, std::abs(cur))) return {cur, n};
    prev = cur;
  }
  throw Error(ErrorKind::QuadratureNotConverged, "band quadrature did not stabilise after three doublings");
}

ThoulessResult thouless_check(const Spectrum& s, cplx z) {
  if (s.bands.distance_to_bands(z) <= 1e-3 * plane_diameter(s)) {
    throw Error(ErrorKind::InvalidArgument, "Thouless check needs a point away from the bands");
  }
  ThoulessResult r;
  const Discriminant& d = s.disc;
  const BandIntegral pot = integrate_dk(s, [&](double t) { return std::log(std::abs(z - d.point(t))); });
  r.potential = pot.value;
  r.nodes = pot.nodes;
  r.log_capacity = std::log(capacity(s.model()));
  r.lyapunov = lyapunov(d, z);
  r.residual = std::abs(r.lyapunov - (r.potential - r.log_capacity));
  return r;
}

}  // namespace opz

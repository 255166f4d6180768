#include "opz/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "opz/equilibrium.hpp"
#include "opz/error.hpp"
#include "opz/parallel.hpp"
#include "opz/tridiagonal.hpp"

namespace opz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kBandSlack = 1e-10;

double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double oprl_residual(const PeriodicJacobi& m, int n, double x) {
  double prev = 0.0, cur = 1.0, norm2 = 1.0;
  double dprev = 0.0, dcur = 0.0;
  for (int k = 0; k < n; ++k) {
    const double a_prev = k == 0 ? 0.0 : m.a(k);
    const double next = ((x - m.b(k + 1)) * cur - a_prev * prev) / m.a(k + 1);
    const double dnext = (cur + (x - m.b(k + 1)) * dcur - a_prev * dprev) / m.a(k + 1);
    prev = cur;
    cur = next;
    dprev = dcur;
    dcur = dnext;
    norm2 += cur * cur;
    if (std::abs(cur) > 1e150 || std::abs(dcur) > 1e150) {
      prev *= 1e-150;
      cur *= 1e-150;
      dprev *= 1e-150;
      dcur *= 1e-150;
      norm2 *= 1e-300;
    }
  }
  const double normalized = std::abs(cur) / std::sqrt(norm2);
  if (dcur == 0.0) return normalized;
  return std::min(normalized, std::abs(cur / dcur) / std::max(1.0, std::abs(x)));
}

void place_oprl(const BandStructure& bs, double x, Placement& place, int& region) {
  for (std::size_t j = 0; j < bs.bands.size(); ++j) {
    const Band& b = bs.bands[j];
    if (std::abs(x - b.lo) <= kBandSlack || std::abs(x - b.hi) <= kBandSlack) {
      place = Placement::Edge;
      region = static_cast<int>(j);
      return;
    }
  }
  for (std::size_t j = 0; j < bs.bands.size(); ++j) {
    const Band& b = bs.bands[j];
    if (x > b.lo + kBandSlack && x < b.hi - kBandSlack) {
      place = Placement::Band;
      region = static_cast<int>(j);
      return;
    }
  }
  region = bs.gap_of(x);
  place = region >= 0 ? Placement::Gap : Placement::OffSpectrum;
}

void place_opuc(const BandStructure& bs, int n, cplx z, Placement& place, int& region) {
  const double r = std::abs(z);
  const double window = 1.0 / std::sqrt(static_cast<double>(n));
  region = -1;
  place = Placement::OffSpectrum;
  if (r == 0.0 || 1.0 - r > window) return;
  const double theta = std::arg(z);
  const int band = bs.band_of(theta, 0.0);
  if (band >= 0) {
    place = Placement::Band;
    region = band;
    return;
  }
  const int gap = bs.gap_of(theta);
  if (gap >= 0) {
    place = Placement::Gap;
    region = gap;
  }
}

// Monic Szego recursion with derivatives, jointly rescaled.
struct SzegoEval {
  cplx phi, dphi, star;
};

SzegoEval szego(const PeriodicVerblunsky& v, int n, cplx z) {
  cplx phi{1.0}, star{1.0}, dphi{0.0}, dstar{0.0};
  for (int k = 0; k < n; ++k) {
    const cplx al = v.alpha(k);
    const cplx ca = std::conj(al);
    const cplx nphi = z * phi - ca * star;
    const cplx nstar = star - al * z * phi;
    const cplx ndphi = phi + z * dphi - ca * dstar;
    const cplx ndstar = dstar - al * (phi + z * dphi);
    phi = nphi;
    star = nstar;
    dphi = ndphi;
    dstar = ndstar;
    const double big = std::max({std::abs(phi), std::abs(star), std::abs(dphi), std::abs(dstar)});
    if (big > 1e150) {
      const double s = 1.0 / big;
      phi *= s;
      star *= s;
      dphi *= s;
      dstar *= s;
    }
  }
  return {phi, dphi, star};
}

double opuc_residual(const PeriodicVerblunsky& v, int n, cplx z) {
  cplx phi{1.0}, star{1.0};
  double norm2 = 1.0;
  for (int k = 0; k < n; ++k) {
    const cplx al = v.alpha(k);
    const double rho = v.rho(k);
    const cplx nphi = (z * phi - std::conj(al) * star) / rho;
    star = (star - al * z * phi) / rho;
    phi = nphi;
    norm2 += std::norm(phi);
    if (norm2 > 1e300) {
      phi *= 1e-150;
      star *= 1e-150;
      norm2 *= 1e-300;
    }
  }
  return std::abs(phi) / std::sqrt(norm2);
}

int origin_multiplicity(const PeriodicVerblunsky& v, int n) {
  std::vector<cplx> phi{cplx{1.0}}, star{cplx{1.0}};
  for (int k = 0; k < n; ++k) {
    const cplx al = v.alpha(k);
    std::vector<cplx> nphi(phi.size() + 1, cplx{0.0}), nstar(phi.size() + 1, cplx{0.0});
    for (std::size_t i = 0; i < phi.size(); ++i) {
      nphi[i + 1] += phi[i];
      nphi[i] -= std::conj(al) * star[i];
      nstar[i] += star[i];
      nstar[i + 1] -= al * phi[i];
    }
    phi = std::move(nphi);
    star = std::move(nstar);
  }
  int r = 0;
  while (r < n && phi[static_cast<std::size_t>(r)] == cplx{0.0}) ++r;
  return r;
}

std::vector<double> circle_sign_zeros(const std::function<double(double)>& g, int grid) {
  const double h = kTwoPi / grid;
  const double t0 = 0.2718281828459045 * h;
  std::vector<double> out;
  double prev = g(t0);
  for (int i = 1; i <= grid; ++i) {
    const double t = t0 + i * h;
    const double cur = g(t);
    if (cur == 0.0) {
      out.push_back(wrap_angle(t));
      prev = cur;
      continue;
    }
    if (prev != 0.0 && (prev < 0) != (cur < 0)) {
      double lo = t - h, hi = t, glo = prev;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = g(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((gm < 0) == (glo < 0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      out.push_back(wrap_angle(0.5 * (lo + hi)));
    }
    prev = cur;
  }
  std::sort(out.begin(), out.end());
  return out;
}

double lift_angle(const Band& b, double theta) {
  double t = wrap_angle(theta);
  if (t < b.lo - 1e-12) t += kTwoPi;
  return t;
}

}  // namespace

std::string_view to_string(Placement p) noexcept {
  switch (p) {
    case Placement::Band: return "band";
    case Placement::Edge: return "edge";
    case Placement::Gap: return "gap";
    case Placement::OffSpectrum: return "off";
  }
  return "off";
}

ZeroReport oprl_zeros(const Spectrum& s, int n) {
  const auto* jm = std::get_if<PeriodicJacobi>(&s.model());
  if (jm == nullptr) throw Error(ErrorKind::InvalidArgument, "oprl_zeros needs a Jacobi model");
  if (n < 1 || n > 2000) throw Error(ErrorKind::InvalidArgument, "degree must lie in [1, 2000]");
  std::vector<double> diag(static_cast<std::size_t>(n)), off(static_cast<std::size_t>(n - 1));
  for (int k = 1; k <= n; ++k) diag[static_cast<std::size_t>(k - 1)] = jm->b(k);
  for (int k = 1; k < n; ++k) off[static_cast<std::size_t>(k - 1)] = jm->a(k);
  const std::vector<double> eig = tridiagonal_eigenvalues(diag, off);

  ZeroReport r;
  r.kind = ModelKind::Jacobi;
  r.n = n;
  for (double x : eig) {
    Placement place;
    int region;
    place_oprl(s.bands, x, place, region);
    const double res = oprl_residual(*jm, n, x);
    r.zeros.emplace_back(x, 0.0);
    r.residuals.push_back(res);
    r.placement.push_back(place);
    r.region.push_back(region);
    r.worst_residual = std::max(r.worst_residual, res);
  }
  r.residual_too_large = r.worst_residual > kResidualWarn;
  return r;
}

ZeroReport opuc_zeros(const Spectrum& s, int n) {
  const auto* v = std::get_if<PeriodicVerblunsky>(&s.model());
  if (v == nullptr) throw Error(ErrorKind::InvalidArgument, "opuc_zeros needs a Verblunsky model");
  if (n < 1 || n > 500) throw Error(ErrorKind::InvalidArgument, "degree must lie in [1, 500]");
  const int r0 = origin_multiplicity(*v, n);
  const int d = n - r0;
  std::vector<cplx> roots(static_cast<std::size_t>(d));
  const double start = std::max(0.5, 1.0 - 2.0 / n);
  const int p = s.period();
  for (int l = 0; l < d; ++l) {
    const double k = (l + 0.37) / d;
    const int band = std::min(p - 1, static_cast<int>(k * p));
    roots[static_cast<std::size_t>(l)] = std::polar(start, k_inverse(s, band, k));
  }

  auto log_deriv = [&](cplx z) {
    const SzegoEval e = szego(*v, n, z);
    return e.dphi / e.phi - static_cast<double>(r0) / z;
  };
  std::vector<bool> done(static_cast<std::size_t>(d), false);
  bool converged = d == 0;
  for (int sweep = 0; sweep < 500 && !converged; ++sweep) {

    converged = true;
    for (int i = 0; i < d; ++i) {
      const auto k = static_cast<std::size_t>(i);
      if (done[k]) continue;
      const cplx zi = roots[k];
      cplx sum{0.0};
      for (int j = 0; j < d; ++j) {
        if (j != i) sum += 1.0 / (zi - roots[static_cast<std::size_t>(j)]);
      }
      const cplx ld = log_deriv(zi);
      if (!std::isfinite(std::abs(ld))) {
        done[k] = true;
        continue;
      }
      const cplx w = 1.0 / (ld - sum);
      roots[k] = zi - w;
      if (std::abs(w) <= 1e-13 * std::max(std::abs(roots[k]), 1e-3)) {
        done[k] = true;
      } else {
        converged = false;
      }
    }
  }

  ZeroReport rep;
  rep.kind = ModelKind::Verblunsky;
  rep.n = n;
  std::vector<std::pair<cplx, double>> found;
  for (int i = 0; i < r0; ++i) found.emplace_back(cplx{0.0}, 0.0);
  for (cplx z : roots) {
    const SzegoEval e = szego(*v, n, z);
    const double step = e.dphi == cplx{0.0} ? INFINITY : std::abs(e.phi / e.dphi);
    found.emplace_back(z, std::min(opuc_residual(*v, n, z), step));
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    const double ax = x.first == cplx{0.0} ? 0.0 : wrap_angle(std::arg(x.first));
    const double ay = y.first == cplx{0.0} ? 0.0 : wrap_angle(std::arg(y.first));
    if (ax != ay) return ax < ay;
    return std::abs(x.first) < std::abs(y.first);
  });
  for (const auto& [z, res] : found) {
    Placement place;
    int region;
    place_opuc(s.bands, n, z, place, region);
    rep.zeros.push_back(z);
    rep.residuals.push_back(res);
    rep.placement.push_back(place);
    rep.region.push_back(region);
    rep.worst_residual = std::max(rep.worst_residual, res);
  }
  rep.residual_too_large = rep.worst_residual > kResidualWarn;
  if (!converged && rep.residual_too_large) {
    throw Error(ErrorKind::RootFindingFailure,
                "Aberth iteration did not converge; worst residual " + std::to_string(rep.worst_residual));
  }
  return rep;
}

ZeroReport polynomial_zeros(const Spectrum& s, int n) {
  return s.kind() == ModelKind::Jacobi ? oprl_zeros(s, n) : opuc_zeros(s, n);
}

std::vector<double> para_zeros(const PeriodicVerblunsky& model, int n) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorKind::InvalidArgument, "para_zeros needs an even degree");
  auto g = [&](double theta) {
    const cplx z = std::polar(1.0, theta);
    const cplx phi = eval_opuc(model, n, z).phi;
    return (std::polar(1.0, -0.5 * n * theta) * phi).imag();
  };
  std::vector<double> out = circle_sign_zeros(g, 16 * n);
  if (static_cast<int>(out.size()) < n) out = circle_sign_zeros(g, 32 * n);
  if (static_cast<int>(out.size()) < n) {
    throw Error(ErrorKind::MissedZero, "found " + std::to_string(out.size()) + " of " + std::to_string(n) +
                                           " zeros of Phi_n - Phi_n^*");
  }
  return out;
}

std::vector<double> predict_exact(const Spectrum& s, int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "m must be positive");
  const int p = s.period();
  std::vector<double> out;
  for (const DirichletDatum& d : dirichlet_data(s)) out.push_back(d.location);
  for (int j = 0; j < p; ++j) {
    for (int q = 1; q < m; ++q) {
      const double k = static_cast<double>(j) / p + static_cast<double>(q) / (static_cast<double>(m) * p);
      const double t = k_inverse(s, j, k);
      out.push_back(s.kind() == ModelKind::Jacobi ? t : wrap_angle(t));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<double, double>> match_pairs(const std::vector<double>& predicted,
                                                   const std::vector<double>& computed, bool angles) {
  if (predicted.size() != computed.size()) {
    throw Error(ErrorKind::InvalidArgument, "predicted and computed lists differ in size");
  }
  std::vector<double> a = predicted, b = computed;
  if (angles && !a.empty()) {
    for (double& x : a) x = wrap_angle(x);
    for (double& x : b) x = wrap_angle(x);
    std::sort(a.begin(), a.end());
    double widest = a.front() + kTwoPi - a.back();
    double cut = a.front() - 0.5 * widest;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      if (a[i + 1] - a[i] > widest) {
        widest = a[i + 1] - a[i];
        cut = 0.5 * (a[i] + a[i + 1]);
      }
    }
    for (std::vector<double>* v : {&a, &b}) {
      for (double& x : *v) {
        while (x < cut) x += kTwoPi;
        while (x >= cut + kTwoPi) x -= kTwoPi;
      }
    }
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.emplace_back(a[i], b[i]);
  return out;
}

double match_distance(const std::vector<double>& predicted, const std::vector<double>& computed, bool angles) {
  if (predicted.size() != computed.size()) return INFINITY;
  double worst = 0.0;
  for (const auto& [x, y] : match_pairs(predicted, computed, angles)) {
    worst = std::max(worst, angles ? std::abs(std::remainder(x - y, kTwoPi)) : std::abs(x - y));
  }
  return worst;
}

ClockStats clock_stats(const Spectrum& s, const ZeroReport& report) {
  ClockStats out;
  out.n = report.n;
  const int p = s.period();
  std::vector<std::vector<std::pair<double, double>>> per_band(static_cast<std::size_t>(p));
  for (std::size_t i = 0; i < report.zeros.size(); ++i) {
    switch (report.placement[i]) {
      case Placement::Band: {
        const auto j = static_cast<std::size_t>(report.region[i]);
        const cplx z = report.zeros[i];
        double t = z.real();
        if (s.kind() == ModelKind::Verblunsky) t = lift_angle(s.bands.bands[j], std::arg(z));
        per_band[j].emplace_back(k_of(s, t), 1.0 - std::abs(z));
        break;
      }
      case Placement::Edge: ++out.edge_count; break;
      case Placement::Gap: ++out.gap_count; break;
      case Placement::OffSpectrum: ++out.off_count; break;
    }
  }
  const double n = report.n;
  for (int j = 0; j < p; ++j) {
    auto& pts = per_band[static_cast<std::size_t>(j)];
    std::sort(pts.begin(), pts.end());
    BandClock bc;
    bc.band = j;
    bc.count = static_cast<int>(pts.size());
    for (std::size_t l = 0; l + 1 < pts.size(); ++l) {
      const double dev = n * std::abs(pts[l + 1].first - pts[l].first - 1.0 / n);
      bc.deviations.push_back(dev);
      bc.max_deviation = std::max(bc.max_deviation, dev);
    }
    if (s.kind() == ModelKind::Verblunsky) {
      for (const auto& pt : pts) bc.max_radial = std::max(bc.max_radial, pt.second);
    }
    out.max_deviation = std::max(out.max_deviation, bc.max_deviation);
    out.bands.push_back(std::move(bc));
  }
  return out;
}

CountTable count_bounds_check(const Spectrum& s, int n_min, int n_max) {
  const int limit = s.kind() == ModelKind::Jacobi ? 2000 : 500;
  if (n_min < 1 || n_max < n_min || n_max > limit) throw Error(ErrorKind::InvalidArgument, "invalid degree range");
  const int p = s.period();
  CountTable t;
  t.n_min = n_min;
  t.n_max = n_max;
  const auto total = static_cast<std::size_t>(n_max - n_min + 1);
  t.counts.assign(total, std::vector<int>(static_cast<std::size_t>(p), 0));
  t.max_excess.assign(total, 0.0);
  parallel_for(total, [&](std::size_t i) {
    const ZeroReport r = polynomial_zeros(s, n_min + static_cast<int>(i));
    for (std::size_t z = 0; z < r.zeros.size(); ++z) {
      if (r.placement[z] == Placement::Band) ++t.counts[i][static_cast<std::size_t>(r.region[z])];
    }
  });
  for (std::size_t i = 0; i < total; ++i) {
    const int n = n_min + static_cast<int>(i);
    for (int j = 0; j < p; ++j) {
      const int count = t.counts[i][static_cast<std::size_t>(j)];
      const double excess = std::abs(count - static_cast<double>(n) / p);
      t.max_excess[i] = std::max(t.max_excess[i], excess);
    }
  }
  if (s.kind() != ModelKind::Jacobi) return t;

  auto violation = [&](const std::string& check, int n, int j, const std::string& detail) {
    t.violations.push_back({check, n, j, detail});
  };
  for (std::size_t i = 0; i < total; ++i) {
    const int n = n_min + static_cast<int>(i);
    for (int j = 0; j < p; ++j) {
      const int count = t.counts[i][static_cast<std::size_t>(j)];
      const double excess = std::abs(count - static_cast<double>(n) / p);
      if (excess > 1.0 + 0.5 * p + 1e-12) {
        violation("total", n, j, "|N - n/p| = " + std::to_string(excess));
      }
      std::vector<std::pair<int, int>> reps{{n / p, n % p}};
      if (n % p == p - 1) reps.emplace_back(n / p + 1, -1);
      for (const auto& [m, b] : reps) {
        if (m < 1) continue;
        const int diff = std::abs(count - (m - 1));
        if (diff > std::min(b + 1, p - b)) {
          violation("per-offset", n, j,
                    "m=" + std::to_string(m) + " b=" + std::to_string(b) + " |N-(m-1)|=" + std::to_string(diff));
        }
      }
      if (i + 1 < total) {
        const int next = t.counts[i + 1][static_cast<std::size_t>(j)];
        if (std::abs(next - count) > 1) violation("lipschitz", n, j, "N jumps by " + std::to_string(next - count));
      }
    }
  }
  return t;
}

LimitReport limit_points(const Spectrum& s, int b, const std::vector<int>& m_list) {
  if (m_list.size() < 3) throw Error(ErrorKind::InvalidArgument, "limit_points needs at least three m values");
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    if (m_list[i] < 1 || (i > 0 && m_list[i] <= m_list[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "m list must be positive and strictly increasing");
    }
  }
  if (b < 0 || b > s.period()) throw Error(ErrorKind::InvalidArgument, "offset outside [0, p]");
  LimitReport out;
  out.offset = b;
  out.m_list = m_list;
  const bool oprl = s.kind() == ModelKind::Jacobi;
  if (!oprl && std::get<PeriodicVerblunsky>(s.model()).all_zero()) {
    out.refused = true;
    out.note = "all Verblunsky coefficients vanish: phi_n(z) = z^n and every zero sits at the origin";
    return out;
  }
  const int p = s.period();
  std::vector<ZeroReport> reports(m_list.size());
  parallel_for(m_list.size(), [&](std::size_t i) {
    const int n = oprl ? m_list[i] * p + b - 1 : m_list[i] * p + b;
    if (n >= 1) reports[i] = polynomial_zeros(s, n);
  });

  const double diam = oprl ? s.bands.diameter : 2.0;
  const JostZeros jz = jost_offband_zeros(s, b);
  std::vector<DirichletDatum> mass;
  for (const DirichletDatum& d : dirichlet_data(s)) {
    if (d.sign == DirichletSign::Plus) mass.push_back(d);
  }

  const ZeroReport& last = reports.back();
  for (cplx z : last.zeros) {
    if (s.bands.distance_to_bands(z) <= 1e-3 * diam) continue;
    std::vector<cplx> chain{z};
    for (std::size_t i = reports.size() - 1; i-- > 0;) {
      const cplx cur = chain.back();
      cplx best = cur;
      double best_d = INFINITY;
      for (cplx w : reports[i].zeros) {
        if (std::abs(w - cur) < best_d) {
          best_d = std::abs(w - cur);
          best = w;
        }
      }
      chain.push_back(best);
    }
    std::reverse(chain.begin(), chain.end());
    std::vector<double> disp;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) disp.push_back(std::abs(chain[i + 1] - chain[i]));
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < disp.size(); ++i) monotone = monotone && disp[i + 1] <= disp[i] + 1e-12;
    if (!monotone || disp.back() > 1e-6) continue;

    LimitCluster c;
    c.point = z;
    c.displacements = disp;
    c.explanation = "unexplained";
    c.distance = INFINITY;
    for (const JostZero& j : jz.zeros) {
      const double dist = std::abs(j.point - z);
      if (dist <= 1e-4 && dist < c.distance) {
        c.matched = true;
        c.explanation = "jost-zero";
        c.distance = dist;
      }
    }
    for (const DirichletDatum& d : mass) {
      const double dist = std::abs(d.point - z);
      if (dist <= 1e-4 && dist < c.distance) {
        c.matched = true;
        c.explanation = "mass-point";
        c.distance = dist;
      }
    }
    out.unexplained = out.unexplained || !c.matched;
    out.clusters.push_back(std::move(c));
  }
  return out;
}

}  // namespace opz

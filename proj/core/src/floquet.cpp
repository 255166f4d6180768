#include "opz/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>

#include "opz/equilibrium.hpp"
#include "opz/error.hpp"
#include "opz/zeros.hpp"

namespace opz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

cplx ipow(cplx z, int n) {
  cplx base = n < 0 ? 1.0 / z : z;
  cplx out{1.0};
  for (int e = std::abs(n); e > 0; e >>= 1) {
    if (e & 1) out *= base;
    base *= base;
  }
  return out;
}

double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

DirichletSign classify(cplx c) {
  const double m = std::abs(c);
  if (std::abs(m - 1.0) <= kEdgeMultiplierTol) return DirichletSign::Edge;
  return m < 1.0 ? DirichletSign::Plus : DirichletSign::Minus;
}

Mat2 monodromy(const Discriminant& d, cplx z) {
  const Mat2 t = transfer(d.model(), d.period(), z);
  if (d.kind() == ModelKind::Jacobi) return t;
  return ipow(z, -d.period() / 2) * t;
}

FloquetSplit split_from(const Mat2& m, const GammaPair& g, ModelKind kind) {
  const cplx diff = g.plus - g.minus;
  if (std::abs(diff) < 1e-12) throw Error(ErrorKind::NearBranchPoint, "Gamma_+ and Gamma_- coincide");
  FloquetSplit f;
  f.gamma = g;
  const cplx inv = 1.0 / diff;
  f.p_plus = inv * (m - g.minus * Mat2::identity());
  f.p_minus = inv * (g.plus * Mat2::identity() - m);
  const Mat2& p = f.p_plus;
  if (kind == ModelKind::Jacobi) {
    f.a = p.m21;
    f.b = p.m11;
  } else {
    f.a = 0.5 * (p.m11 + p.m12 + p.m21 + p.m22);
    f.b = 0.5 * (p.m11 + p.m12 - p.m21 - p.m22);
  }
  return f;
}

void check_offset(const Spectrum& s, int b) {
  if (b < 0 || b > s.period()) {
    throw Error(ErrorKind::InvalidArgument, "offset " + std::to_string(b) + " outside [0, p]");
  }
}

JostValue jost_from_split(const Spectrum& s, int b, cplx z, const FloquetSplit& f) {
  if (const auto* jm = std::get_if<PeriodicJacobi>(&s.model())) {
    const Mat2 tb = transfer(*jm, b, z);
    const cplx p = tb.m21;
    const cplx q = tb.m22;
    return {f.a * q + f.b * p, -f.a * q + (1.0 - f.b) * p};
  }
  const OpucValues v = eval_opuc(std::get<PeriodicVerblunsky>(s.model()), b, z);
  return {f.a * v.phi + f.b * v.psi, (1.0 - f.a) * v.phi - f.b * v.psi};
}

bool is_free(const Spectrum& s) {
  const auto* v = std::get_if<PeriodicVerblunsky>(&s.model());
  return v != nullptr && v->all_zero();
}

// Golden-section minimisation of g on [lo, hi].
double golden_min(const std::function<double(double)>& g, double lo, double hi) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    if (gc < gd) {
      hi = d;
      d = c;
      gd = gc;
      c = hi - r * (hi - lo);
      gc = g(c);
    } else {
      lo = c;
      c = d;
      gc = gd;
      d = lo + r * (hi - lo);
      gd = g(d);
    }
  }
  return 0.5 * (lo + hi);
}

// Accumulated argument change of f along seg(u), u in [0, 1], with adaptive
// refinement so that consecutive samples differ by less than pi/3 in phase.
// Returns nullopt if f gets too close to zero on the path.
std::optional<double> arg_change(const std::function<cplx(cplx)>& f, const std::function<cplx(double)>& seg,
                                 int base = 32) {
  double total = 0.0;
  bool ok = true;
  std::function<void(double, double, cplx, cplx, int)> walk = [&](double u0, double u1, cplx f0, cplx f1,
                                                                   int depth) {
    if (!ok) return;
    const double step = std::arg(f1 / f0);
    if (std::abs(step) < kPi / 3 || depth > 16) {
      if (depth > 16) ok = false;
      total += step;
      return;
    }
    const double um = 0.5 * (u0 + u1);
    const cplx fm = f(seg(um));
    if (!(std::abs(fm) > 1e-14) || !std::isfinite(std::abs(fm))) {
      ok = false;
      return;
    }
    walk(u0, um, f0, fm, depth + 1);
    walk(um, u1, fm, f1, depth + 1);
  };
  cplx prev = f(seg(0.0));
  if (!(std::abs(prev) > 1e-14) || !std::isfinite(std::abs(prev))) return std::nullopt;
  for (int i = 1; i <= base && ok; ++i) {
    const double u = static_cast<double>(i) / base;
    const cplx cur = f(seg(u));
    if (!(std::abs(cur) > 1e-14) || !std::isfinite(std::abs(cur))) return std::nullopt;
    walk(static_cast<double>(i - 1) / base, u, prev, cur, 0);
    prev = cur;
  }
  if (!ok) return std::nullopt;
  return total;
}

// Annular sector r in [r0, r1], theta in [t0, t1]; a disk when r0 == 0.
struct Sector {
  double r0, r1, t0, t1;

  bool disk() const { return r0 == 0.0; }
  double extent() const { return disk() ? 2.0 * r1 : std::max(r1 - r0, r1 * (t1 - t0)); }
  cplx center() const {
    if (disk()) return {0.0, 0.0};
    return std::polar(0.5 * (r0 + r1), 0.5 * (t0 + t1));
  }
  bool contains(cplx z, double margin) const {
    const double r = std::abs(z);
    if (disk()) return r <= r1 * (1.0 + margin);
    if (r < r0 - margin * (r1 - r0) || r > r1 + margin * (r1 - r0)) return false;
    double t = std::arg(z);
    const double span = t1 - t0;
    while (t < t0 - margin * span) t += kTwoPi;
    while (t > t1 + margin * span) t -= kTwoPi;
    return t >= t0 - margin * span && t <= t1 + margin * span;
  }
};

std::optional<int> winding(const std::function<cplx(cplx)>& f, const Sector& s) {
  double total = 0.0;
  if (s.disk()) {
    const auto c = arg_change(f, [&](double u) { return std::polar(s.r1, kTwoPi * u); }, 64);
    if (!c) return std::nullopt;
    total = *c;
  } else {
    const std::function<cplx(double)> pieces[4] = {
        [&](double u) { return std::polar(s.r1, s.t0 + (s.t1 - s.t0) * u); },
        [&](double u) { return std::polar(s.r1 + (s.r0 - s.r1) * u, s.t1); },
        [&](double u) { return std::polar(s.r0, s.t1 + (s.t0 - s.t1) * u); },
        [&](double u) { return std::polar(s.r0 + (s.r1 - s.r0) * u, s.t0); },
    };
    for (const auto& piece : pieces) {
      const auto c = arg_change(f, piece);
      if (!c) return std::nullopt;
      total += *c;
    }
  }
  const double w = total / kTwoPi;
  const double rounded = std::round(w);
  if (std::abs(w - rounded) > 0.2) return std::nullopt;
  return static_cast<int>(rounded);
}

std::optional<cplx> newton(const std::function<cplx(cplx)>& f, cplx z, int mult) {
  for (int it = 0; it < 60; ++it) {
    const cplx fz = f(z);
    if (fz == cplx{0.0}) return z;
    const double h = 1e-7 * std::max(1e-3, std::abs(z));
    const cplx df = (f(z + h) - f(z - h)) / (2.0 * h);
    if (df == cplx{0.0} || !std::isfinite(std::abs(df))) return std::nullopt;
    const cplx step = static_cast<double>(mult) * fz / df;
    z -= step;
    if (!std::isfinite(std::abs(z))) return std::nullopt;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) return z;
  }
  return z;
}

class SectorSearch {
 public:
  SectorSearch(std::function<cplx(cplx)> f, std::vector<JostZero>& out) : f_(std::move(f)), out_(out) {}

  void run(const Sector& s) {
    const auto w = winding(f_, s);
    if (!w) throw Error(ErrorKind::RootFindingFailure, "argument principle failed on the search contour");
    solve(s, *w);
  }

 private:
  void solve(const Sector& s, int w) {
    if (w <= 0) return;
    if (s.extent() < 1e-3) {
      cplx start = s.center();
      if (s.disk()) start = std::polar(0.25 * s.r1, 0.7);
      if (const auto z = newton(f_, start, w); z && s.contains(*z, 0.5)) {
        out_.push_back({*z, w, std::abs(f_(*z))});
        return;
      }
      if (s.extent() < 1e-10) {
        const cplx c = s.disk() ? std::polar(1e-3 * s.r1, 0.7) : s.center();
        out_.push_back({s.disk() ? cplx{0.0} : c, w, std::abs(f_(c))});
        return;
      }
    }
    for (double ratio : {0.5137, 0.4729, 0.5431, 0.4417}) {
      const auto [a, b] = split(s, ratio);
      const auto wa = winding(f_, a);
      const auto wb = winding(f_, b);
      if (wa && wb && *wa + *wb == w && *wa >= 0 && *wb >= 0) {
        solve(a, *wa);
        solve(b, *wb);
        return;
      }
    }
    throw Error(ErrorKind::RootFindingFailure, "could not subdivide a search sector consistently");
  }

  static std::pair<Sector, Sector> split(const Sector& s, double ratio) {
    if (s.disk()) {
      const double rm = ratio * s.r1;
      return {Sector{0.0, rm, 0.0, kTwoPi}, Sector{rm, s.r1, 0.0, kTwoPi}};
    }
    if (s.r1 - s.r0 >= s.r1 * (s.t1 - s.t0)) {
      const double rm = s.r0 + ratio * (s.r1 - s.r0);
      return {Sector{s.r0, rm, s.t0, s.t1}, Sector{rm, s.r1, s.t0, s.t1}};
    }
    const double tm = s.t0 + ratio * (s.t1 - s.t0);
    return {Sector{s.r0, s.r1, s.t0, tm}, Sector{s.r0, s.r1, tm, s.t1}};
  }

  std::function<cplx(cplx)> f_;
  std::vector<JostZero>& out_;
};

int winding_on_circle(const std::function<cplx(cplx)>& f, cplx center, double radius) {
  const auto c = arg_change(f, [&](double u) { return center + std::polar(radius, kTwoPi * u); }, 64);
  if (!c) return 1;
  return static_cast<int>(std::lround(*c / kTwoPi));
}

JostZeros oprl_offband(const Spectrum& s, int b) {
  JostZeros out;
  out.offset = b;
  out.bound = jost_zero_bound(s, b);
  const BandStructure& bs = s.bands;
  const double diam = std::max(bs.diameter, 1e-6);
  std::vector<std::pair<double, double>> intervals;
  intervals.emplace_back(bs.bands.front().lo - 0.25 * diam, bs.bands.front().lo);
  for (const Gap& g : bs.gaps) {
    if (!g.closed) intervals.emplace_back(g.lo, g.hi);
  }
  intervals.emplace_back(bs.bands.back().hi, bs.bands.back().hi + 0.25 * diam);

  auto fr = [&](double x) { return jost(s, b, cplx{x, 0.0}).j.real(); };
  auto fc = [&](cplx z) { return jost(s, b, z).j; };
  std::vector<double> found;
  constexpr int kGrid = 400;
  for (const auto& [l, r] : intervals) {
    std::vector<double> xs(kGrid), fs(kGrid);
    for (int i = 0; i < kGrid; ++i) {
      const double u = (i + 0.5) / kGrid;
      xs[static_cast<std::size_t>(i)] = l + (r - l) * 0.5 * (1.0 - std::cos(kPi * u));
      fs[static_cast<std::size_t>(i)] = fr(xs[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i + 1 < kGrid; ++i) {
      const auto k = static_cast<std::size_t>(i);
      if (fs[k] == 0.0) {
        found.push_back(xs[k]);
        continue;
      }
      if ((fs[k] < 0) != (fs[k + 1] < 0) && fs[k + 1] != 0.0) {
        double lo = xs[k], hi = xs[k + 1], flo = fs[k];
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          const double fm = fr(mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        found.push_back(0.5 * (lo + hi));
      } else if (k > 0 && std::abs(fs[k]) < std::abs(fs[k - 1]) && std::abs(fs[k]) < std::abs(fs[k + 1]) &&
                 (fs[k - 1] < 0) == (fs[k] < 0)) {
        const double x = golden_min([&](double t) { return std::abs(fr(t)); }, xs[k - 1], xs[k + 1]);
        if (std::abs(fr(x)) <= 1e-10) found.push_back(x);
      }
    }
  }
  std::sort(found.begin(), found.end());
  for (std::size_t i = 0; i < found.size(); ++i) {
    const double x = found[i];
    double radius = 1e-2 * diam;
    for (const Band& band : bs.bands) {
      radius = std::min(radius, 0.25 * std::min(std::abs(x - band.lo), std::abs(x - band.hi)));
    }
    if (i > 0) radius = std::min(radius, 0.25 * (x - found[i - 1]));
    if (i + 1 < found.size()) radius = std::min(radius, 0.25 * (found[i + 1] - x));
    const int mult = radius > 0 ? std::max(1, winding_on_circle(fc, cplx{x, 0.0}, radius)) : 1;
    out.zeros.push_back({cplx{x, 0.0}, mult, std::abs(fc(cplx{x, 0.0}))});
    out.count += mult;
  }
  return out;
}

JostZeros opuc_offband(const Spectrum& s, int b) {
  JostZeros out;
  out.offset = b;
  out.bound = jost_zero_bound(s, b);
  if (is_free(s)) return out;
  constexpr double kEta = 1e-3;
  auto f = [&](cplx z) { return jost(s, b, z).j; };
  SectorSearch search(f, out.zeros);
  search.run(Sector{0.0, 1.0 - kEta, 0.0, kTwoPi});
  for (const Gap& g : s.bands.gaps) {
    if (g.closed) continue;
    const double delta = std::min(1e-3, 0.05 * (g.hi - g.lo));
    search.run(Sector{1.0 - kEta, 1.0 + kEta, g.lo + delta, g.hi - delta});
  }
  for (const JostZero& z : out.zeros) out.count += z.multiplicity;
  return out;
}

}  // namespace

std::vector<DirichletDatum> dirichlet_data(const Spectrum& s) {
  std::vector<DirichletDatum> out;
  const BandStructure& bs = s.bands;
  if (const auto* jm = std::get_if<PeriodicJacobi>(&s.model())) {
    if (jm->period() == 1) return out;
    const PolyMatrix t = period_poly_matrix(*jm);
    const std::vector<double> roots = real_rooted_roots(t.e21);
    const double tol = 1e-8 * std::max(1.0, bs.diameter);
    for (std::size_t j = 0; j < roots.size(); ++j) {
      const Gap& g = bs.gaps.at(j);
      const double x = roots[j];
      if (x < g.lo - tol || x > g.hi + tol) {
        throw Error(ErrorKind::DirichletOutsideGap, "Dirichlet point " + std::to_string(x) + " misses gap " +
                                                        std::to_string(j + 1));
      }
      DirichletDatum d;
      d.location = x;
      d.point = cplx{x, 0.0};
      d.multiplier = transfer(*jm, jm->period(), d.point).m11;
      d.sign = classify(d.multiplier);
      d.gap = static_cast<int>(j);
      d.closed_gap = g.closed;
      out.push_back(d);
    }
    return out;
  }
  const auto& v = std::get<PeriodicVerblunsky>(s.model());
  const int p = v.period();
  const std::vector<double> angles = para_zeros(v, p);
  const double tol = 1e-8;
  for (double theta : angles) {
    int gap = -1;
    for (std::size_t j = 0; j < bs.gaps.size() && gap < 0; ++j) {
      for (double c : {theta, theta + kTwoPi, theta - kTwoPi}) {
        if (c >= bs.gaps[j].lo - tol && c <= bs.gaps[j].hi + tol) {
          gap = static_cast<int>(j);
          break;
        }
      }
    }
    if (gap < 0) {
      throw Error(ErrorKind::DirichletOutsideGap, "Dirichlet angle " + std::to_string(theta) + " lies in a band");
    }
    DirichletDatum d;
    d.location = wrap_angle(theta);
    d.point = std::polar(1.0, d.location);
    d.multiplier = ipow(d.point, -p / 2) * eval_opuc(v, p, d.point).phi;
    d.sign = classify(d.multiplier);
    d.gap = gap;
    d.closed_gap = bs.gaps[static_cast<std::size_t>(gap)].closed;
    out.push_back(d);
  }
  return out;
}

FloquetSplit floquet_split(const Discriminant& d, cplx z) {
  return split_from(monodromy(d, z), gamma_pm(d, z), d.kind());
}

FloquetSplit floquet_split_boundary(const Discriminant& d, double t, Side side) {
  return split_from(monodromy(d, d.point(t)), gamma_boundary(d, t, side), d.kind());
}

JostValue jost(const Spectrum& s, int b, cplx z) {
  check_offset(s, b);
  return jost_from_split(s, b, z, floquet_split(s.disc, z));
}

JostValue jost_boundary(const Spectrum& s, int b, double t, Side side) {
  check_offset(s, b);
  return jost_from_split(s, b, s.disc.point(t), floquet_split_boundary(s.disc, t, side));
}

int jost_zero_bound(const Spectrum& s, int b) {
  const int p = s.period();
  if (s.kind() == ModelKind::Jacobi) return b == 0 ? p - 1 : 2 * p + 2 * b - 3;
  return 2 * p + 2 * b - 1;
}

BandPhase band_phase(const Spectrum& s, int b, int band) {
  check_offset(s, b);
  if (band < 0 || band >= s.period()) throw Error(ErrorKind::InvalidArgument, "band index out of range");
  const Band& bd = s.bands.bands[static_cast<std::size_t>(band)];
  const bool oprl = s.kind() == ModelKind::Jacobi;
  for (int n = 2048; n <= 2048 * 64; n *= 2) {
    BandPhase out;
    out.band = band;
    out.t.resize(static_cast<std::size_t>(n));
    out.k.resize(static_cast<std::size_t>(n));
    out.phase.resize(static_cast<std::size_t>(n));
    out.modulus.resize(static_cast<std::size_t>(n));
    double max_step = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const double t = bd.lo + (bd.hi - bd.lo) * (i + 0.5) / n;
      const JostValue jv = jost_boundary(s, b, t);
      const cplx value = oprl ? jv.j : -jv.j / jv.tilde;
      out.t[k] = t;
      out.k[k] = k_of(s, t);
      out.modulus[k] = std::abs(oprl ? jv.j : jv.tilde);
      if (out.modulus[k] < 1e-10) {
        throw Error(ErrorKind::SingularPointOnBand, "Jost function vanishes on band " + std::to_string(band + 1));
      }
      const double raw = std::arg(value);
      if (i == 0) {
        out.phase[k] = raw;
      } else {
        const double step = std::remainder(raw - out.phase[k - 1], kTwoPi);
        max_step = std::max(max_step, std::abs(step));
        out.phase[k] = out.phase[k - 1] + step;
      }
    }
    if (max_step <= kPi / 2) {
      out.increment = out.phase.back() - out.phase.front();
      return out;
    }
  }
  throw Error(ErrorKind::RootFindingFailure, "phase unwrapping did not resolve on band " + std::to_string(band + 1));
}

JostZeros jost_offband_zeros(const Spectrum& s, int b) {
  check_offset(s, b);
  JostZeros z = s.kind() == ModelKind::Jacobi ? oprl_offband(s, b) : opuc_offband(s, b);
  if (z.count > z.bound) {
    throw Error(ErrorKind::CountExceedsBound, "j_" + std::to_string(b) + " has " + std::to_string(z.count) +
                                                  " off-band zeros, bound " + std::to_string(z.bound));
  }
  return z;
}

std::vector<SingularPoint> singular_point_scan(const Spectrum& s, int b) {
  check_offset(s, b);
  std::vector<SingularPoint> out;
  if (is_free(s)) return out;
  constexpr int kGrid = 4096;
  for (const Band& bd : s.bands.bands) {
    auto mag = [&](double t) { return std::abs(jost_boundary(s, b, t).j); };
    const double width = bd.hi - bd.lo;
    std::vector<double> vals(kGrid);
    for (int i = 0; i < kGrid; ++i) vals[static_cast<std::size_t>(i)] = mag(bd.lo + width * (i + 0.5) / kGrid);
    for (int i = 1; i + 1 < kGrid; ++i) {
      const auto k = static_cast<std::size_t>(i);
      if (!(vals[k] <= vals[k - 1] && vals[k] <= vals[k + 1])) continue;
      const double lo = bd.lo + width * (i - 0.5) / kGrid;
      const double hi = bd.lo + width * (i + 1.5) / kGrid;
      const double t0 = golden_min(mag, lo, hi);
      const double m0 = mag(t0);
      if (m0 >= 1e-8) continue;
      const double h1 = 1e-4 * width, h2 = 1e-3 * width;
      const double ratio = mag(t0 + h2) / std::max(mag(t0 + h1), 1e-300);
      const int order = std::max(1, static_cast<int>(std::lround(std::log(ratio) / std::log(h2 / h1))));
      out.push_back({t0, m0, order});
    }
  }
  return out;
}

}  // namespace opz

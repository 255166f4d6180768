#include "opz/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "opz/error.hpp"

namespace opz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Solves f(t) = target on [lo, hi] where f is monotone. Falls back to the
// nearer endpoint when rounding hides the bracket (closed gaps).
template <class F>
double solve_monotone(F f, double lo, double hi, double target) {
  double glo = f(lo) - target;
  const double ghi = f(hi) - target;
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo < 0) == (ghi < 0)) {
    if (std::abs(glo) <= kEdgeResidualTol && std::abs(glo) <= std::abs(ghi)) return lo;
    if (std::abs(ghi) <= kEdgeResidualTol) return hi;
    throw Error(ErrorKind::RootFindingFailure, "band edge for Delta = " + std::to_string(target) + " not bracketed");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = f(mid) - target;
    if (gm == 0.0) return mid;
    if ((gm < 0) == (glo < 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

cplx ipow(cplx z, int n) {
  cplx base = n < 0 ? 1.0 / z : z;
  cplx out{1.0};
  for (int e = std::abs(n); e > 0; e >>= 1) {
    if (e & 1) out *= base;
    base *= base;
  }
  return out;
}

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

void check_edge(const Discriminant& d, double t, double target) {
  const double r = std::abs(d.real_value(t) - target);
  if (!(r <= kEdgeResidualTol)) {
    throw Error(ErrorKind::RootFindingFailure, "band edge residual " + std::to_string(r) + " exceeds tolerance");
  }
}

BandStructure oprl_bands(const Discriminant& d) {
  const int p = d.period();
  const Poly& tr = d.trace_poly();
  const Poly deriv = poly_derivative(tr);
  std::vector<double> crit = p > 1 ? real_rooted_roots(deriv) : std::vector<double>{};
  if (static_cast<int>(crit.size()) != p - 1) {
    throw Error(ErrorKind::RootFindingFailure, "expected " + std::to_string(p - 1) + " critical points of Delta");
  }
  Poly up = tr, down = tr;
  up[0] -= 2.0;
  down[0] += 2.0;
  const double bound = std::max(cauchy_root_bound(up), cauchy_root_bound(down));

  std::vector<double> knots{-bound};
  knots.insert(knots.end(), crit.begin(), crit.end());
  knots.push_back(bound);

  auto f = [&](double x) { return d.on_line(x); };
  BandStructure bs;
  bs.kind = ModelKind::Jacobi;
  for (int j = 0; j < p; ++j) {
    const double lo = knots[static_cast<std::size_t>(j)];
    const double hi = knots[static_cast<std::size_t>(j) + 1];
    const double e1 = solve_monotone(f, lo, hi, 2.0);
    const double e2 = solve_monotone(f, lo, hi, -2.0);
    check_edge(d, e1, 2.0);
    check_edge(d, e2, -2.0);
    Band b{std::min(e1, e2), std::max(e1, e2), 0};
    b.orientation = sign_of(d.on_line_derivative(0.5 * (b.lo + b.hi)));
    bs.bands.push_back(b);
  }
  bs.diameter = bs.bands.back().hi - bs.bands.front().lo;
  for (int j = 0; j + 1 < p; ++j) {
    Gap g{bs.bands[static_cast<std::size_t>(j)].hi, bs.bands[static_cast<std::size_t>(j) + 1].lo, false};
    g.closed = (g.hi - g.lo) < kClosedGapRelTol * bs.diameter;
    bs.gaps.push_back(g);
  }
  for (const Band& b : bs.bands) {
    bs.edges.push_back(b.lo);
    bs.edges.push_back(b.hi);
  }
  return bs;
}

std::vector<double> circle_critical_points(const Discriminant& d) {
  const int p = d.period();
  for (int n = 4096; n <= 4096 * 16; n *= 2) {
    const double h = kTwoPi / n;
    // Irrational offset keeps grid points off symmetric critical points.
    const double t0 = 0.3183098861837907 * h;
    std::vector<double> crit;
    double prev = d.on_circle_derivative(t0);
    for (int i = 1; i <= n; ++i) {
      const double t = t0 + i * h;
      const double cur = d.on_circle_derivative(t);
      if ((prev < 0) != (cur < 0)) {
        auto g = [&](double s) { return d.on_circle_derivative(s); };
        crit.push_back(wrap_angle(solve_monotone(g, t - h, t, 0.0)));
      }
      prev = cur;
    }
    if (static_cast<int>(crit.size()) == p) {
      std::sort(crit.begin(), crit.end());
      return crit;
    }
  }
  throw Error(ErrorKind::RootFindingFailure, "could not isolate the critical points of Delta on the circle");
}

BandStructure opuc_bands(const Discriminant& d) {
  const int p = d.period();
  const std::vector<double> crit = circle_critical_points(d);
  auto f = [&](double t) { return d.on_circle(t); };

  BandStructure bs;
  bs.kind = ModelKind::Verblunsky;
  bs.diameter = kTwoPi;
  for (int j = 0; j < p; ++j) {
    const double lo = crit[static_cast<std::size_t>(j)];
    const double hi = j + 1 < p ? crit[static_cast<std::size_t>(j) + 1] : crit[0] + kTwoPi;
    const double e1 = solve_monotone(f, lo, hi, 2.0);
    const double e2 = solve_monotone(f, lo, hi, -2.0);
    check_edge(d, e1, 2.0);
    check_edge(d, e2, -2.0);
    Band b{std::min(e1, e2), std::max(e1, e2), 0};
    b.orientation = sign_of(d.on_circle_derivative(0.5 * (b.lo + b.hi)));
    const double shifted = wrap_angle(b.lo);
    const double shift = kTwoPi - shifted < 1e-12 ? -b.lo : shifted - b.lo;
    b.lo += shift;
    b.hi += shift;
    bs.bands.push_back(b);
  }
  std::sort(bs.bands.begin(), bs.bands.end(), [](const Band& x, const Band& y) { return x.lo < y.lo; });
  for (int j = 0; j < p; ++j) {
    const Band& cur = bs.bands[static_cast<std::size_t>(j)];
    const double next_lo = j + 1 < p ? bs.bands[static_cast<std::size_t>(j) + 1].lo : bs.bands[0].lo + kTwoPi;
    Gap g{cur.hi, next_lo, false};
    g.closed = (g.hi - g.lo) < kClosedGapRelTol * bs.diameter;
    bs.gaps.push_back(g);
  }
  for (const Band& b : bs.bands) {
    bs.edges.push_back(b.lo);
    bs.edges.push_back(b.hi);
  }
  return bs;
}

}  // namespace

Discriminant::Discriminant(Model model) : model_(std::move(model)), kind_(kind_of(model_)), p_(period_of(model_)) {
  if (p_ > kMaxPolyPeriod) {
    throw Error(ErrorKind::PeriodTooLarge,
                "period " + std::to_string(p_) + " exceeds the supported maximum " + std::to_string(kMaxPolyPeriod));
  }
  const PolyMatrix t = std::visit([](const auto& m) { return period_poly_matrix(m); }, model_);
  trace_ = t.trace();
  poly_trim(trace_);
  trace_deriv_ = poly_derivative(trace_);
  for (cplx c : trace_) real_trace_.push_back(c.real());
  for (cplx c : trace_deriv_) real_trace_deriv_.push_back(c.real());
}

Discriminant discriminant(const Model& model) { return Discriminant(model); }

cplx Discriminant::operator()(cplx z) const {
  const cplx tr = poly_eval(trace_, z);
  if (kind_ == ModelKind::Jacobi) return tr;
  return tr * ipow(z, -p_ / 2);
}

cplx Discriminant::derivative(cplx z) const {
  const cplx dtr = poly_eval(trace_deriv_, z);
  if (kind_ == ModelKind::Jacobi) return dtr;
  const cplx tr = poly_eval(trace_, z);
  const int h = p_ / 2;
  return ipow(z, -h) * dtr - static_cast<double>(h) * ipow(z, -h - 1) * tr;
}

double Discriminant::on_line(double x) const { return horner(real_trace_, x); }

double Discriminant::on_line_derivative(double x) const { return horner(real_trace_deriv_, x); }

double Discriminant::on_circle(double theta) const {
  const cplx z = std::polar(1.0, theta);
  const cplx rot = std::polar(1.0, -0.5 * p_ * theta);
  return (rot * poly_eval(trace_, z)).real();
}

double Discriminant::on_circle_derivative(double theta) const {
  const cplx z = std::polar(1.0, theta);
  const cplx rot = std::polar(1.0, -0.5 * p_ * theta);
  const cplx inner = z * poly_eval(trace_deriv_, z) - 0.5 * p_ * poly_eval(trace_, z);
  return (rot * cplx{0.0, 1.0} * inner).real();
}

int BandStructure::band_of(double t, double slack) const {
  if (kind == ModelKind::Jacobi) {
    for (std::size_t j = 0; j < bands.size(); ++j) {
      if (t >= bands[j].lo - slack && t <= bands[j].hi + slack) return static_cast<int>(j);
    }
    return -1;
  }
  const double w = wrap_angle(t);
  for (std::size_t j = 0; j < bands.size(); ++j) {
    for (double c : {w, w + kTwoPi, w - kTwoPi}) {
      if (c >= bands[j].lo - slack && c <= bands[j].hi + slack) return static_cast<int>(j);
    }
  }
  return -1;
}

int BandStructure::gap_of(double t) const {
  const double w = kind == ModelKind::Jacobi ? t : wrap_angle(t);
  for (std::size_t j = 0; j < gaps.size(); ++j) {
    if (gaps[j].closed) continue;
    if (kind == ModelKind::Jacobi) {
      if (w > gaps[j].lo && w < gaps[j].hi) return static_cast<int>(j);
    } else {
      for (double c : {w, w + kTwoPi, w - kTwoPi}) {
        if (c > gaps[j].lo && c < gaps[j].hi) return static_cast<int>(j);
      }
    }
  }
  return -1;
}

double BandStructure::distance_to_bands(cplx z) const {
  double best = INFINITY;
  if (kind == ModelKind::Jacobi) {
    for (const Band& b : bands) {
      const double x = std::clamp(z.real(), b.lo, b.hi);
      best = std::min(best, std::abs(z - cplx{x, 0.0}));
    }
    return best;
  }
  const double r = std::abs(z);
  const int home = r > 0 ? band_of(std::arg(z), 0.0) : -1;
  for (std::size_t j = 0; j < bands.size(); ++j) {
    if (static_cast<int>(j) == home) best = std::min(best, std::abs(r - 1.0));
    best = std::min(best, std::abs(z - std::polar(1.0, bands[j].lo)));
    best = std::min(best, std::abs(z - std::polar(1.0, bands[j].hi)));
  }
  return best;
}

BandStructure band_edges(const Discriminant& d) {
  return d.kind() == ModelKind::Jacobi ? oprl_bands(d) : opuc_bands(d);
}

GammaPair gamma_pm(const Discriminant& d, cplx z) {
  const cplx h = 0.5 * d(z);
  cplx s = std::sqrt(h * h - 1.0);
  if ((std::conj(h) * s).real() < 0) s = -s;
  GammaPair g;
  g.plus = h + s;
  g.minus = 1.0 / g.plus;
  g.ambiguous = std::abs(std::abs(g.plus) - std::abs(g.minus)) < 1e-12;
  return g;
}

GammaPair gamma_boundary(const Discriminant& d, double t, Side side) {
  const double delta = d.real_value(t);
  if (std::abs(delta) > 2.0) {
    GammaPair g = gamma_pm(d, d.point(t));
    return g;
  }
  const double deriv = d.real_derivative(t);
  const double sgn = (deriv >= 0 ? 1.0 : -1.0) * (side == Side::Upper ? 1.0 : -1.0);
  const double h = 0.5 * delta;
  const double s = std::sqrt(std::max(0.0, (1.0 - h) * (1.0 + h)));
  GammaPair g;
  g.plus = cplx{h, sgn * s};
  g.minus = std::conj(g.plus);
  return g;
}

double lyapunov(const Discriminant& d, cplx z) {
  const GammaPair g = gamma_pm(d, z);
  const double growth = std::log(std::abs(g.plus)) / d.period();
  if (d.kind() == ModelKind::Jacobi) return growth;
  return 0.5 * std::log(std::abs(z)) + growth;
}

double capacity(const Model& model) {
  double log_sum = 0.0;
  int p = 0;
  if (const auto* j = std::get_if<PeriodicJacobi>(&model)) {
    for (double a : j->a_values()) log_sum += std::log(a);
    p = j->period();
  } else {
    const auto& v = std::get<PeriodicVerblunsky>(model);
    for (double r : v.rho_values()) log_sum += std::log(r);
    p = v.period();
  }
  return std::exp(log_sum / p);
}

}  // namespace opz

#include "opz/verify.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <set>

#include "opz/equilibrium.hpp"
#include "opz/error.hpp"
#include "opz/floquet.hpp"
#include "opz/report.hpp"
#include "opz/zeros.hpp"

namespace opz {

namespace {

constexpr double kPi = std::numbers::pi;

std::mutex coverage_mutex;
std::set<std::string> coverage;

void touch(std::initializer_list<const char*> ops) {
  const std::lock_guard<std::mutex> lock(coverage_mutex);
  for (const char* op : ops) coverage.insert(op);
}

std::string fmt(double x) { return format_double(x); }

CheckRow row(int criterion, std::string check, const std::string& model, bool pass, std::string detail) {
  return {criterion, std::move(check), model, pass ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)};
}

CheckRow skip(int criterion, std::string check, const std::string& model, std::string why) {
  return {criterion, std::move(check), model, CheckStatus::Skip, std::move(why)};
}

// Runs body, turning an escaped Error into a failing row.
std::vector<CheckRow> guarded(int criterion, const std::string& check, const std::string& model,
                              const std::function<std::vector<CheckRow>()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    return {row(criterion, check, model, false, e.what())};
  }
}

bool is_free(const Model& m) {
  const auto* v = std::get_if<PeriodicVerblunsky>(&m);
  return v != nullptr && v->all_zero();
}

// Points of band j (0-based) at equally spaced interior values of k.
std::vector<double> band_samples(const Spectrum& s, int count) {
  const int p = s.period();
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const int j = i % p;
    const int slot = i / p;
    const int per_band = (count + p - 1) / p;
    const double k = (j + (slot + 0.5) / per_band) / p;
    out.push_back(k_inverse(s, j, k));
  }
  return out;
}

cplx poly_value(const Model& m, long n, cplx z) {
  if (const auto* jm = std::get_if<PeriodicJacobi>(&m)) return eval_oprl(*jm, n, z).p_n;
  return eval_opuc(std::get<PeriodicVerblunsky>(m), n, z).phi;
}

cplx ipow(cplx z, long n) {
  cplx r{1.0};
  cplx base = n < 0 ? 1.0 / z : z;
  for (long e = std::labs(n); e > 0; e >>= 1) {
    if (e & 1) r *= base;
    base *= base;
  }
  return r;
}

// Degree tied to offset b and m: mp + b - 1 (OPRL) or mp + b (OPUC).
long degree_for(const Spectrum& s, int m, int b) {
  const long base = static_cast<long>(m) * s.period() + b;
  return s.kind() == ModelKind::Jacobi ? base - 1 : base;
}

// Off-band test points: a circle of radius 0.6 diam around the hull midpoint
// (OPRL) or circles of radius 0.5, 0.8, 1.25 and 2 (OPUC).
std::vector<cplx> offband_points(const Spectrum& s, int count) {
  std::vector<cplx> out;
  if (s.kind() == ModelKind::Jacobi) {
    const double lo = s.bands.bands.front().lo;
    const double hi = s.bands.bands.back().hi;
    const double c = 0.5 * (lo + hi);
    const double r = 0.6 * (hi - lo);
    for (int i = 0; i < count; ++i) out.push_back(c + std::polar(r, 2.0 * kPi * (i + 0.5) / count));
    return out;
  }
  const double radii[] = {0.5, 0.8, 1.25, 2.0};
  for (int i = 0; i < count; ++i) out.push_back(std::polar(radii[i % 4], 2.0 * kPi * (i + 0.31) / count));
  return out;
}

}  // namespace

std::string_view to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
  }
  return "fail";
}

NamedModel chebyshev_model() { return {"chebyshev", PeriodicJacobi({0.5}, {0.0})}; }
NamedModel jacobi_12_model() { return {"jacobi_a12_b00", PeriodicJacobi({1.0, 2.0}, {0.0, 0.0})}; }
NamedModel jacobi_11_model() { return {"jacobi_a11_b1m1", PeriodicJacobi({1.0, 1.0}, {1.0, -1.0})}; }
NamedModel random_jacobi_model() { return {"random_jacobi_p3_seed3", random_jacobi(3, 3)}; }
NamedModel verblunsky_half_model() {
  const double a = std::sqrt(0.5);
  return {"verblunsky_sqrt_half", PeriodicVerblunsky({cplx{a}, cplx{a}})};
}
NamedModel random_verblunsky_model() { return {"random_verblunsky_p2_seed7", random_verblunsky(7, 2)}; }
NamedModel free_verblunsky_model() { return {"verblunsky_zero", PeriodicVerblunsky({cplx{0.0}})}; }

std::vector<NamedModel> oprl_test_models() {
  return {chebyshev_model(), jacobi_12_model(), jacobi_11_model(), random_jacobi_model()};
}

std::vector<NamedModel> opuc_test_models() {
  return {verblunsky_half_model(), random_verblunsky_model(), free_verblunsky_model()};
}

std::vector<CheckRow> check_chebyshev_exactness() {
  const NamedModel cheb = chebyshev_model();
  return guarded(1, "chebyshev zeros", cheb.name, [&] {
    touch({"polynomial_zeros"});
    const Spectrum s(cheb.model);
    std::vector<CheckRow> rows;
    for (int m : {4, 8, 16, 64, 200}) {
      const ZeroReport r = polynomial_zeros(s, m - 1);
      double worst = 0;
      for (int j = 1; j < m; ++j) {
        const double expect = std::cos((m - j) * kPi / m);
        worst = std::max(worst, std::abs(r.zeros[static_cast<std::size_t>(j - 1)].real() - expect));
      }
      rows.push_back(row(1, "chebyshev zeros m=" + std::to_string(m), cheb.name, worst <= 1e-12,
                         "max error " + fmt(worst) + " (tol 1e-12)"));
    }
    return rows;
  });
}

std::vector<CheckRow> check_exact_zeros(const NamedModel& m) {
  return guarded(2, "exact zeros", m.name, [&] {
    touch({"predict_exact", "match_distance", "polynomial_zeros", "dirichlet_data", "k_inverse"});
    const Spectrum s(m.model);
    const int p = s.period();
    double worst = 0;
    int worst_m = 0;
    for (int mm = 2; mm <= 12; ++mm) {
      const std::vector<double> pred = predict_exact(s, mm);
      const ZeroReport r = polynomial_zeros(s, mm * p - 1);
      std::vector<double> comp;
      for (cplx z : r.zeros) comp.push_back(z.real());
      const double d = match_distance(pred, comp, false);
      if (!(d <= worst)) {
        worst = d;
        worst_m = mm;
      }
    }
    return std::vector<CheckRow>{row(2, "zeros of p_{mp-1} vs prediction, m=2..12", m.name, worst <= 1e-8,
                                     "max distance " + fmt(worst) + " at m=" + std::to_string(worst_m) +
                                         " (tol 1e-8)")};
  });
}

std::vector<CheckRow> check_reference_bands() {
  std::vector<CheckRow> rows;
  const NamedModel j12 = jacobi_12_model();
  auto a = guarded(3, "band edges", j12.name, [&] {
    touch({"band_edges"});
    const Spectrum s(j12.model);
    const std::vector<double> expect{-3.0, -1.0, 1.0, 3.0};
    double worst = s.bands.edges.size() == expect.size() ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < expect.size() && i < s.bands.edges.size(); ++i) {
      worst = std::max(worst, std::abs(s.bands.edges[i] - expect[i]));
    }
    return std::vector<CheckRow>{row(3, "edges {-3,-1,1,3}", j12.name, worst <= 1e-12,
                                     "max error " + fmt(worst) + " (tol 1e-12)")};
  });
  rows.insert(rows.end(), a.begin(), a.end());

  const NamedModel cheb = chebyshev_model();
  auto b = guarded(3, "band edges", cheb.name, [&] {
    const Spectrum s(cheb.model);
    const Band& band = s.bands.bands.front();
    const double err = std::max(std::abs(band.lo + 1.0), std::abs(band.hi - 1.0));
    return std::vector<CheckRow>{row(3, "band [-1,1]", cheb.name, s.bands.bands.size() == 1 && err <= 1e-12,
                                     "max error " + fmt(err) + " (tol 1e-12)")};
  });
  rows.insert(rows.end(), b.begin(), b.end());

  const NamedModel half = verblunsky_half_model();
  auto c = guarded(3, "band edges", half.name, [&] {
    const Spectrum s(half.model);
    // Constant alpha: the spectrum is the arc |sin(theta/2)| >= |alpha|.
    const double expect = 2.0 * std::asin(std::sqrt(0.5));
    double err = INFINITY;
    for (const Band& band : s.bands.bands) err = std::min(err, std::abs(band.lo - expect));
    return std::vector<CheckRow>{row(3, "edge angle pi/2", half.name, err <= 1e-10,
                                     "error " + fmt(err) + " (tol 1e-10)")};
  });
  rows.insert(rows.end(), c.begin(), c.end());
  return rows;
}

std::vector<CheckRow> check_band_edges(const NamedModel& m) {
  return guarded(3, "band edges", m.name, [&] {
    touch({"band_edges"});
    const Spectrum s(m.model);
    double worst = 0;
    for (double e : s.bands.edges) {
      const double v = s.disc.real_value(e);
      worst = std::max(worst, std::abs(std::abs(v) - 2.0));
    }
    bool ordered = static_cast<int>(s.bands.bands.size()) == s.period();
    for (const Band& b : s.bands.bands) ordered = ordered && b.lo < b.hi;
    for (std::size_t i = 0; i + 1 < s.bands.bands.size(); ++i) {
      ordered = ordered && s.bands.bands[i].hi <= s.bands.bands[i + 1].lo + 1e-12;
    }
    return std::vector<CheckRow>{row(3, "|Delta(edge)| = 2, p ordered bands", m.name, worst <= 1e-8 && ordered,
                                     "max edge residual " + fmt(worst) + " (tol 1e-8), " +
                                         std::to_string(s.bands.bands.size()) + " bands")};
  });
}

std::vector<CheckRow> check_reference_capacity() {
  const NamedModel j12 = jacobi_12_model();
  return guarded(4, "capacity", j12.name, [&] {
    touch({"capacity"});
    const Spectrum s(j12.model);
    // E is the preimage of [e1^2, e2^2] under x^2, so C(E) = sqrt((e2^2 - e1^2) / 4).
    const double e1 = s.bands.bands.back().lo;
    const double e2 = s.bands.bands.back().hi;
    const double closed = std::sqrt((e2 * e2 - e1 * e1) / 4.0);
    const double c = capacity(s.model());
    const double err = std::max(std::abs(c - closed), std::abs(c - std::sqrt(2.0)));
    return std::vector<CheckRow>{row(4, "capacity sqrt(2) vs two-interval form", j12.name, err <= 1e-12,
                                     "capacity " + fmt(c) + ", closed form " + fmt(closed) + " (tol 1e-12)")};
  });
}

std::vector<CheckRow> check_thouless(const NamedModel& m) {
  return guarded(4, "thouless", m.name, [&] {
    touch({"thouless_check", "integrate_dk", "lyapunov", "gamma_pm", "capacity", "k_of"});
    const Spectrum s(m.model);
    double worst = 0;
    for (cplx z : offband_points(s, 20)) worst = std::max(worst, thouless_check(s, z).residual);
    return std::vector<CheckRow>{row(4, "Thouless residual at 20 off-band points", m.name, worst <= 1e-6,
                                     "max residual " + fmt(worst) + " (tol 1e-6)")};
  });
}

std::vector<CheckRow> check_counting_bounds(const NamedModel& m) {
  return guarded(5, "counting bounds", m.name, [&] {
    touch({"count_bounds_check"});
    const Spectrum s(m.model);
    const CountTable t = count_bounds_check(s, 1, 300);
    std::string detail = std::to_string(t.violations.size()) + " violations over n=1..300";
    if (!t.ok()) {
      const BoundViolation& v = t.violations.front();
      detail += "; first: " + v.check + " n=" + std::to_string(v.n) + " band " + std::to_string(v.band) + " " +
                v.detail;
    }
    return std::vector<CheckRow>{row(5, "total, per-offset and Lipschitz count bounds", m.name, t.ok(), detail)};
  });
}

std::vector<CheckRow> check_clock_law() {
  const NamedModel j12 = jacobi_12_model();
  return guarded(6, "clock law", j12.name, [&] {
    touch({"clock_stats", "k_of"});
    const Spectrum s(j12.model);
    auto d = [&](int n) { return clock_stats(s, polynomial_zeros(s, n)).max_deviation; };
    const double d50 = d(50), d100 = d(100), d200 = d(200), d400 = d(400);
    const double c = 50.0 * d50;
    const bool decreasing = d400 < d100;
    const bool rate = d100 <= 2.0 * c / 100 && d200 <= 2.0 * c / 200 && d400 <= 2.0 * c / 400;
    return std::vector<CheckRow>{
        row(6, "d(400) < d(100) and d(n) <= 2C/n, C = 50 d(50)", j12.name, decreasing && rate,
            "d(50)=" + fmt(d50) + " d(100)=" + fmt(d100) + " d(200)=" + fmt(d200) + " d(400)=" + fmt(d400))};
  });
}

std::vector<CheckRow> check_floquet_band(const NamedModel& m) {
  const Spectrum s(m.model);
  const int p = s.period();
  std::vector<CheckRow> rows;
  if (s.kind() == ModelKind::Jacobi) {
    auto ab = guarded(7, "Floquet a, b on bands", m.name, [&] {
      touch({"floquet_split"});
      double worst_a = 0, worst_b = 0;
      for (double x : band_samples(s, 200)) {
        const FloquetSplit f = floquet_split_boundary(s.disc, x, Side::Upper);
        worst_a = std::max(worst_a, std::abs(f.a.real()));
        worst_b = std::max(worst_b, std::abs(f.b.real() - 0.5));
      }
      return std::vector<CheckRow>{row(7, "Re a(x+i0) = 0, Re b(x+i0) = 1/2 at 200 band points", m.name,
                                       worst_a <= 1e-9 && worst_b <= 1e-9,
                                       "max |Re a| " + fmt(worst_a) + ", max |Re b - 1/2| " + fmt(worst_b) +
                                           " (tol 1e-9)")};
    });
    rows.insert(rows.end(), ab.begin(), ab.end());
    auto rec = guarded(7, "band reconstruction", m.name, [&] {
      touch({"band_phase", "jost", "k_of"});
      const auto& jm = std::get<PeriodicJacobi>(s.model());
      constexpr int mm = 8;
      double worst = 0;
      for (int b = 1; b <= p; ++b) {
        for (int j = 0; j < p; ++j) {
          const BandPhase ph = band_phase(s, b, j);
          const std::size_t stride = std::max<std::size_t>(1, ph.t.size() / 200);
          for (std::size_t i = 0; i < ph.t.size(); i += stride) {
            const double direct = eval_oprl(jm, static_cast<long>(mm) * p + b - 1, ph.t[i]).p_n.real();
            const double sign = (mm * p) % 2 == 0 ? 1.0 : -1.0;
            const double amp = 2.0 * ph.modulus[i];
            const double model = sign * amp * std::cos(kPi * mm * p * ph.k[i] - ph.phase[i]);
            worst = std::max(worst, std::abs(direct - model) / std::max(amp, 1e-300));
          }
        }
      }
      return std::vector<CheckRow>{row(7, "p_{8p+b-1} = 2|j_b| cos(8 pi p k - gamma_b), all b", m.name,
                                       worst <= 1e-8, "max relative error " + fmt(worst) + " (tol 1e-8)")};
    });
    rows.insert(rows.end(), rec.begin(), rec.end());
    auto sing = guarded(7, "nonvanishing of j_b on bands", m.name, [&] {
      touch({"singular_point_scan"});
      std::size_t found = 0;
      for (int b = 1; b <= p; ++b) found += singular_point_scan(s, b).size();
      return std::vector<CheckRow>{row(7, "j_b(x+i0) has no band zeros", m.name, found == 0,
                                       std::to_string(found) + " singular points")};
    });
    rows.insert(rows.end(), sing.begin(), sing.end());
    return rows;
  }

  auto dec = guarded(7, "boundary decomposition", m.name, [&] {
    touch({"floquet_split", "jost"});
    constexpr int mm = 8;
    double worst = 0;
    const std::vector<double> samples = band_samples(s, 200);
    for (int b = 1; b <= p; ++b) {
      for (double t : samples) {
        const cplx z = std::polar(1.0, t);
        const FloquetSplit f = floquet_split_boundary(s.disc, t, Side::Upper);
        const JostValue jv = jost_boundary(s, b, t, Side::Upper);
        const cplx model = ipow(z, static_cast<long>(mm) * p / 2) *
                           (jv.j * ipow(f.gamma.plus, mm) + jv.tilde * ipow(f.gamma.minus, mm));
        const cplx direct = poly_value(s.model(), static_cast<long>(mm) * p + b, z);
        const double scale = std::max({std::abs(jv.j), std::abs(jv.tilde), 1e-300});
        worst = std::max(worst, std::abs(direct - model) / scale);
      }
    }
    return std::vector<CheckRow>{row(7, "phi_{8p+b} = z^{4p}(j Gamma_+^8 + tilde j Gamma_-^8) on bands", m.name,
                                     worst <= 1e-8, "max relative error " + fmt(worst) + " (tol 1e-8)")};
  });
  rows.insert(rows.end(), dec.begin(), dec.end());
  if (is_free(m.model)) {
    rows.push_back(skip(7, "band phase", m.name, "j_b vanishes identically for the free model"));
    touch({"band_phase", "singular_point_scan"});
    return rows;
  }
  auto phase = guarded(7, "band phase", m.name, [&] {
    touch({"band_phase", "singular_point_scan"});
    std::size_t singular = 0;
    int computed = 0;
    for (int b = 1; b <= p; ++b) {
      const std::size_t found = singular_point_scan(s, b).size();
      singular += found;
      for (int j = 0; j < p && found == 0; ++j) {
        band_phase(s, b, j);
        ++computed;
      }
    }
    return std::vector<CheckRow>{row(7, "band phase of A(theta)", m.name, true,
                                     std::to_string(computed) + " band phases, " + std::to_string(singular) +
                                         " singular points")};
  });
  rows.insert(rows.end(), phase.begin(), phase.end());
  return rows;
}

std::vector<CheckRow> check_jost_convergence(const NamedModel& m) {
  return guarded(8, "Jost convergence", m.name, [&] {
    touch({"jost", "gamma_pm", "floquet_split"});
    const Spectrum s(m.model);
    const int p = s.period();
    const bool oprl = s.kind() == ModelKind::Jacobi;
    double worst = 0;
    int measured = 0, exact = 0;
    for (cplx z : offband_points(s, 5)) {
      const GammaPair g = gamma_pm(s.disc, z);
      const double predicted = std::abs(g.minus / g.plus);
      for (int b = 1; b <= p; ++b) {
        const JostValue jv = jost(s, b, z);
        auto err = [&](int mm) {
          cplx v = poly_value(s.model(), degree_for(s, mm, b), z) * ipow(g.plus, -mm);
          if (!oprl) v *= ipow(z, -static_cast<long>(mm) * p / 2);
          return std::abs(v - jv.j);
        };
        const double scale = std::max(std::abs(jv.j), std::abs(jv.tilde));
        int m1 = 1, m2 = 1;
        const double e1 = err(m1);
        double e2 = e1;
        for (int mm = 2; mm <= 10; ++mm) {
          const double e = err(mm);
          if (e <= 1e-9 * scale) break;
          m2 = mm;
          e2 = e;
        }
        if (e1 <= 1e-12 * scale || m2 == m1) {
          ++exact;
          continue;
        }
        const double ratio = std::pow(e2 / e1, 1.0 / (m2 - m1));
        worst = std::max(worst, std::abs(ratio - predicted) / predicted);
        ++measured;
      }
    }
    return std::vector<CheckRow>{row(8, "geometric rate |Gamma_-/Gamma_+| at 5 off-band points", m.name,
                                     worst <= 0.05,
                                     "max relative rate error " + fmt(worst) + " over " + std::to_string(measured) +
                                         " cases (tol 0.05); " + std::to_string(exact) + " exact cases")};
  });
}

std::vector<CheckRow> check_jost_zeros(const NamedModel& m) {
  const Spectrum s(m.model);
  const int p = s.period();
  std::vector<CheckRow> rows;
  auto counts = guarded(9, "Jost zero counts", m.name, [&] {
    touch({"jost_offband_zeros"});
    std::string detail;
    bool pass = true;
    const int b0 = s.kind() == ModelKind::Jacobi ? 0 : 1;
    for (int b = b0; b <= p; ++b) {
      const JostZeros jz = jost_offband_zeros(s, b);
      pass = pass && jz.count <= jz.bound;
      detail += (detail.empty() ? "" : ", ") + std::string("b=") + std::to_string(b) + ": " +
                std::to_string(jz.count) + "/" + std::to_string(jz.bound);
    }
    return std::vector<CheckRow>{row(9, "off-band zeros of j_b within bound", m.name, pass, detail)};
  });
  rows.insert(rows.end(), counts.begin(), counts.end());
  auto limits = guarded(9, "limit points", m.name, [&] {
    touch({"limit_points"});
    int clusters = 0, unexplained = 0;
    bool refused = false;
    for (int b = 1; b <= p; ++b) {
      const LimitReport r = limit_points(s, b, {10, 20, 40});
      refused = refused || r.refused;
      clusters += static_cast<int>(r.clusters.size());
      for (const LimitCluster& c : r.clusters) unexplained += c.matched ? 0 : 1;
    }
    if (refused) return std::vector<CheckRow>{skip(9, "limit points explained", m.name, "free model refused")};
    return std::vector<CheckRow>{row(9, "limit points explained, m in {10,20,40}", m.name, unexplained == 0,
                                     std::to_string(clusters) + " clusters, " + std::to_string(unexplained) +
                                         " unexplained (tol 1e-4)")};
  });
  rows.insert(rows.end(), limits.begin(), limits.end());
  return rows;
}

std::vector<CheckRow> check_opuc_exactness(const NamedModel& m) {
  return guarded(10, "paraorthogonal exactness", m.name, [&] {
    touch({"para_zeros", "predict_exact", "match_distance", "dirichlet_data", "k_inverse"});
    const Spectrum s(m.model);
    const auto& v = std::get<PeriodicVerblunsky>(s.model());
    double worst = 0;
    int worst_m = 0;
    for (int mm = 2; mm <= 10; ++mm) {
      const double d = match_distance(predict_exact(s, mm), para_zeros(v, mm * s.period()), true);
      if (!(d <= worst)) {
        worst = d;
        worst_m = mm;
      }
    }
    return std::vector<CheckRow>{row(10, "zeros of Phi_mp - Phi_mp^* vs prediction, m=2..10", m.name, worst <= 1e-8,
                                     "max angle distance " + fmt(worst) + " at m=" + std::to_string(worst_m) +
                                         " (tol 1e-8)")};
  });
}

std::vector<CheckRow> check_free_case() {
  const NamedModel f = free_verblunsky_model();
  return guarded(10, "free case", f.name, [&] {
    touch({"polynomial_zeros", "band_edges"});
    const Spectrum s(f.model);
    double worst = 0;
    for (int n : {1, 5, 20, 50}) {
      for (cplx z : polynomial_zeros(s, n).zeros) worst = std::max(worst, std::abs(z));
    }
    double length = 0;
    for (const Band& b : s.bands.bands) length += b.hi - b.lo;
    bool closed = true;
    for (const Gap& g : s.bands.gaps) closed = closed && g.closed;
    const double gap = std::abs(length - 2.0 * kPi);
    return std::vector<CheckRow>{row(10, "alpha = 0: zeros at origin, band = circle", f.name,
                                     worst <= 1e-10 && gap <= 1e-10 && closed,
                                     "max |z| " + fmt(worst) + " (tol 1e-10), band length - 2pi " + fmt(gap))};
  });
}

std::vector<CheckRow> check_opuc_clock(const NamedModel& m) {
  return guarded(11, "OPUC clock", m.name, [&] {
    touch({"count_bounds_check", "clock_stats"});
    const Spectrum s(m.model);
    const CountTable t = count_bounds_check(s, 1, 200);
    double sup100 = 0, sup200 = 0;
    for (std::size_t i = 0; i < t.max_excess.size(); ++i) {
      if (i < 100) sup100 = std::max(sup100, t.max_excess[i]);
      sup200 = std::max(sup200, t.max_excess[i]);
    }
    std::vector<CheckRow> rows;
    rows.push_back(row(11, "sup_{n<=200} |N - n/p| attained by n=100", m.name, sup200 <= sup100 + 1e-12,
                       "sup_{n<=100} " + fmt(sup100) + ", sup_{n<=200} " + fmt(sup200)));
    double r[3] = {0, 0, 0};
    const int ns[3] = {40, 80, 160};
    for (int i = 0; i < 3; ++i) {
      const ClockStats cs = clock_stats(s, polynomial_zeros(s, ns[i]));
      double radial = 0;
      for (const BandClock& bc : cs.bands) radial = std::max(radial, bc.max_radial);
      r[i] = radial * ns[i] / std::log(static_cast<double>(ns[i]));
    }
    rows.push_back(row(11, "(1-|z|) n / log n bounded, n in {40,80,160}", m.name, std::max(r[1], r[2]) <= 2.0 * r[0],
                       "R(40)=" + fmt(r[0]) + " R(80)=" + fmt(r[1]) + " R(160)=" + fmt(r[2])));
    return rows;
  });
}

std::vector<CheckRow> check_free_clock(const NamedModel& m) {
  return guarded(11, "OPUC clock", m.name, [&] {
    touch({"count_bounds_check", "clock_stats"});
    const Spectrum s(m.model);
    const CountTable t = count_bounds_check(s, 1, 200);
    int counted = 0;
    for (const auto& per_band : t.counts) {
      for (int c : per_band) counted += c;
    }
    const ClockStats cs = clock_stats(s, polynomial_zeros(s, 40));
    const bool pass = counted == 0 && cs.off_count == 40;
    return std::vector<CheckRow>{row(11, "alpha = 0: no zero enters the window 1-|z| <= n^{-1/2}", m.name, pass,
                                     std::to_string(counted) + " windowed zeros for n <= 200")};
  });
}

std::vector<CheckRow> check_determinism(const NamedModel& m) {
  return guarded(12, "determinism", m.name, [&] {
    ModelFile file{m.model, m.name, false};
    RunConfig cfg;
    cfg.n_list = {24};
    cfg.m = 4;
    int compared = 0;
    bool same = true, round_trip = true;
    for (const std::string& sub : kSubcommands) {
      if (sub == "verify") continue;
      const RunResult a = run_subcommand(sub, file, cfg);
      const RunResult b = run_subcommand(sub, file, cfg);
      for (Format f : {Format::Csv, Format::Json}) {
        same = same && render(a.table, f) == render(b.table, f);
        ++compared;
      }
      round_trip = round_trip && parse_table_json(render_json(a.table)) == a.table;
    }
    return std::vector<CheckRow>{row(12, "byte-identical reruns and JSON round trip", m.name, same && round_trip,
                                     std::to_string(compared) + " outputs compared")};
  });
}

bool VerifyReport::ok() const {
  if (!missing_coverage.empty()) return false;
  return std::none_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.status == CheckStatus::Fail; });
}

std::vector<std::string> required_coverage(ModelKind kind) {
  std::vector<std::string> ops{"band_edges",   "gamma_pm",       "lyapunov",        "capacity",
                               "k_of",         "k_inverse",      "integrate_dk",    "thouless_check",
                               "dirichlet_data", "floquet_split", "jost",            "band_phase",
                               "jost_offband_zeros", "singular_point_scan", "polynomial_zeros", "predict_exact",
                               "match_distance", "clock_stats",  "count_bounds_check", "limit_points"};
  if (kind == ModelKind::Verblunsky) ops.push_back("para_zeros");
  std::sort(ops.begin(), ops.end());
  return ops;
}

VerifyReport verify_model(const NamedModel& m) {
  {
    const std::lock_guard<std::mutex> lock(coverage_mutex);
    coverage.clear();
  }
  VerifyReport rep;
  auto add = [&](std::vector<CheckRow> rows) { rep.rows.insert(rep.rows.end(), rows.begin(), rows.end()); };
  const bool oprl = kind_of(m.model) == ModelKind::Jacobi;
  const bool free = is_free(m.model);

  add(check_chebyshev_exactness());
  if (oprl) {
    add(check_exact_zeros(m));
  } else {
    add({skip(2, "exact zeros of p_{mp-1}", m.name, "OPRL criterion")});
  }
  add(check_reference_bands());
  add(check_band_edges(m));
  add(check_reference_capacity());
  add(check_thouless(m));
  if (oprl) {
    add(check_counting_bounds(m));
  } else {
    add({skip(5, "counting bounds", m.name, "OPRL criterion")});
  }
  add(check_clock_law());
  add(check_floquet_band(m));
  add(check_jost_convergence(m));
  add(check_jost_zeros(m));
  if (oprl) {
    add({skip(10, "paraorthogonal exactness", m.name, "OPUC criterion")});
  } else {
    add(check_opuc_exactness(m));
    add(check_free_case());
  }
  if (oprl) {
    add({skip(11, "OPUC clock", m.name, "OPUC criterion")});
  } else if (free) {
    add(check_free_clock(m));
  } else {
    add(check_opuc_clock(m));
  }
  add(check_determinism(m));

  const std::lock_guard<std::mutex> lock(coverage_mutex);
  for (const std::string& op : required_coverage(kind_of(m.model))) {
    if (coverage.count(op) == 0) rep.missing_coverage.push_back(op);
  }
  return rep;
}

}  // namespace opz

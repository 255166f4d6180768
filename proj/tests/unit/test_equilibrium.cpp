#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <gtest/gtest.h>

#include "generators.hpp"
#include "opz/equilibrium.hpp"
#include "opz/error.hpp"

namespace opz {
namespace {

using std::numbers::pi;
using testing::Gen;

// Integral of f(x) dk over a band with x = lo + (hi - lo)(1 - cos u)/2, which
// removes the inverse square root at the edges. The Gauss nodes stay clear of
// the endpoints where density() throws.
double band_integral(const Spectrum& s, const Band& band, const std::function<double(double)>& f) {
  const auto g = [&](double u) {
    const double x = band.lo + 0.5 * (band.hi - band.lo) * (1.0 - std::cos(u));
    return f(x) * density(s, x) * 0.5 * (band.hi - band.lo) * std::sin(u);
  };
  return boost::math::quadrature::gauss<double, 60>::integrate(g, 0.0, pi);
}

ErrorKind kind_thrown(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

TEST(Equilibrium, ChebyshevArcsine) {
  const Spectrum s(PeriodicJacobi({0.5}, {0.0}));
  for (double x : {-0.99, -0.5, 0.0, 0.3, 0.9}) {
    EXPECT_NEAR(k_of(s, x), 1.0 - std::acos(x) / pi, 1e-14);
    EXPECT_NEAR(density(s, x), 1.0 / (pi * std::sqrt(1.0 - x * x)), 1e-12);
  }
  EXPECT_NEAR(k_inverse(s, 0, 0.25), -std::sqrt(0.5), 1e-13);
}

TEST(Equilibrium, ChebyshevThouless) {
  const Spectrum s(PeriodicJacobi({0.5}, {0.0}));
  const ThoulessResult r = thouless_check(s, cplx{2.0});
  EXPECT_NEAR(r.lyapunov, std::log(2.0 + std::sqrt(3.0)), 1e-12);
  EXPECT_NEAR(r.potential, std::log((2.0 + std::sqrt(3.0)) / 2.0), 1e-9);
  EXPECT_NEAR(r.log_capacity, std::log(0.5), 1e-15);
  EXPECT_LT(r.residual, 1e-9);
}

TEST(Equilibrium, KIsMonotoneWithBandQuanta) {
  for (std::uint32_t seed = 1; seed <= 20; ++seed) {
    SCOPED_TRACE(seed);
    Gen g(seed);
    const Model model = seed % 2 ? Model{g.jacobi(g.integer(1, 6))} : Model{g.verblunsky(2 * g.integer(1, 3))};
    const Spectrum s(model);
    const int p = s.period();
    double prev = -1.0;
    for (int j = 0; j < p; ++j) {
      const Band& band = s.bands.bands[j];
      EXPECT_NEAR(k_of(s, band.lo), static_cast<double>(j) / p, 1e-7);
      EXPECT_NEAR(k_of(s, band.hi), static_cast<double>(j + 1) / p, 1e-7);
      for (int q = 1; q < 10; ++q) {
        const double t = band.lo + (band.hi - band.lo) * q / 10.0;
        const double k = k_of(s, t);
        EXPECT_GT(k, prev);
        prev = k;
        EXPECT_NEAR(k_inverse(s, j, k), t, 1e-10 * (1.0 + std::abs(t)));
      }
    }
  }
}

TEST(Equilibrium, MomentsMatchTraces) {
  // The first two moments of dk are the per-period traces of J and J^2.
  for (std::uint32_t seed = 1; seed <= 15; ++seed) {
    SCOPED_TRACE(seed);
    Gen g(seed);
    const PeriodicJacobi model = g.jacobi(g.integer(1, 6));
    const Spectrum s{Model{model}};
    const int p = model.period();
    double m1 = 0, m2 = 0;
    for (int j = 1; j <= p; ++j) {
      m1 += model.b(j) / p;
      m2 += (model.b(j) * model.b(j) + 2.0 * model.a(j) * model.a(j)) / p;
    }
    EXPECT_NEAR(integrate_dk(s, [](double) { return 1.0; }).value, 1.0, 1e-12);
    EXPECT_NEAR(integrate_dk(s, [](double x) { return x; }).value, m1, 1e-9);
    EXPECT_NEAR(integrate_dk(s, [](double x) { return x * x; }).value, m2, 1e-9);
  }
}

TEST(Equilibrium, DensityIntegratesToBandMass) {
  for (std::uint32_t seed = 40; seed < 50; ++seed) {
    SCOPED_TRACE(seed);
    Gen g(seed);
    const Model model = seed % 2 ? Model{g.jacobi(g.integer(1, 4))} : Model{g.verblunsky(4)};
    const Spectrum s(model);
    const int p = s.period();
    for (const Band& band : s.bands.bands) {
      const double mass = band_integral(s, band, [](double) { return 1.0; });
      EXPECT_NEAR(mass, 1.0 / p, 1e-7);
    }
  }
}

TEST(Equilibrium, ThoulessAgainstIndependentQuadrature) {
  for (std::uint32_t seed = 1; seed <= 8; ++seed) {
    SCOPED_TRACE(seed);
    Gen g(seed);
    const Spectrum s{Model{g.jacobi(g.integer(1, 4))}};
    const cplx z{g.uniform(-2.0, 2.0), g.uniform(0.5, 2.0)};
    double potential = 0;
    for (const Band& band : s.bands.bands) {
      potential += band_integral(s, band, [&](double x) { return std::log(std::abs(z - x)); });
    }
    const ThoulessResult r = thouless_check(s, z);
    EXPECT_NEAR(r.potential, potential, 1e-7);
    EXPECT_NEAR(r.lyapunov, potential - std::log(capacity(s.model())), 1e-7);
  }
}

TEST(Equilibrium, ThoulessOnCircle) {
  const Spectrum s(random_verblunsky(7, 2));
  for (cplx z : {cplx{0.3, 0.1}, cplx{0.0, -0.6}, cplx{1.8, 0.4}}) {
    const ThoulessResult r = thouless_check(s, z);
    EXPECT_LT(r.residual, 1e-8);
  }
}

TEST(Equilibrium, Errors) {
  const Spectrum s(PeriodicJacobi({1.0, 2.0}, {0.0, 0.0}));
  EXPECT_EQ(kind_thrown([&] { k_of(s, 0.0); }), ErrorKind::PointNotInBand);
  EXPECT_EQ(kind_thrown([&] { density(s, 0.0); }), ErrorKind::PointNotInBand);
  EXPECT_EQ(kind_thrown([&] { density(s, 3.0); }), ErrorKind::DensitySingularity);
  EXPECT_EQ(kind_thrown([&] { k_inverse(s, 0, 0.75); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_thrown([&] { thouless_check(s, cplx{2.0, 1e-4}); }), ErrorKind::InvalidArgument);
}

}  // namespace
}  // namespace opz

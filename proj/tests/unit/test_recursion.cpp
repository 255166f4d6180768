#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "opz/error.hpp"
#include "opz/recursion.hpp"

namespace opz {
namespace {

using testing::Gen;

// Monic Szego recursion on values, written out independently of transfer().
std::pair<cplx, cplx> szego_monic(std::span<const cplx> alpha, long n, cplx z) {
  cplx phi{1.0}, star{1.0};
  for (long k = 0; k < n; ++k) {
    const cplx a = alpha[static_cast<std::size_t>(k) % alpha.size()];
    const cplx next = z * phi - std::conj(a) * star;
    star = star - a * z * phi;
    phi = next;
  }
  return {phi, star};
}

TEST(Recursion, JacobiValidation) {
  EXPECT_THROW(PeriodicJacobi({1.0, 0.0}, {0.0, 0.0}), Error);
  EXPECT_THROW(PeriodicJacobi({1.0, -2.0}, {0.0, 0.0}), Error);
  EXPECT_THROW(PeriodicJacobi({1.0}, {0.0, 0.0}), Error);
  EXPECT_THROW(PeriodicJacobi({}, {}), Error);
  try {
    PeriodicJacobi({1.0, 0.0}, {0.0, 0.0});
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidModel);
  }
}

TEST(Recursion, VerblunskyValidationAndDoubling) {
  EXPECT_THROW(PeriodicVerblunsky(std::vector<cplx>{}), Error);
  EXPECT_THROW(PeriodicVerblunsky({cplx{1.0, 0.0}}), Error);
  EXPECT_THROW(PeriodicVerblunsky({cplx{0.6, 0.8}, cplx{0.1}}), Error);

  const PeriodicVerblunsky odd({cplx{0.3, 0.2}, cplx{-0.4}, cplx{0.0, 0.25}});
  EXPECT_TRUE(odd.doubled());
  ASSERT_EQ(odd.period(), 6);
  const std::vector<cplx> expected{0.0, cplx{0.3, 0.2}, 0.0, cplx{-0.4}, 0.0, cplx{0.0, 0.25}};
  for (int k = 0; k < 6; ++k) EXPECT_EQ(odd.alpha(k), expected[k]);
  EXPECT_EQ(odd.original_alpha().size(), 3u);
  EXPECT_DOUBLE_EQ(odd.rho(0), 1.0);
  EXPECT_NEAR(odd.rho(1), std::sqrt(1.0 - 0.13), 1e-15);

  const PeriodicVerblunsky even({cplx{0.5}, cplx{-0.5}});
  EXPECT_FALSE(even.doubled());
  EXPECT_EQ(even.period(), 2);
}

TEST(Recursion, CyclicAccessors) {
  const PeriodicJacobi j({1.0, 2.0, 3.0}, {4.0, 5.0, 6.0});
  EXPECT_EQ(j.a(0), 3.0);
  EXPECT_EQ(j.a(1), 1.0);
  EXPECT_EQ(j.a(7), 1.0);
  EXPECT_EQ(j.b(-1), 5.0);
}

TEST(Recursion, ChebyshevSecondKind) {
  const PeriodicJacobi cheb({0.5}, {0.0});
  for (int n : {1, 2, 7, 40}) {
    for (double theta : {0.3, 1.1, 2.9}) {
      const double expected = std::sin((n + 1) * theta) / std::sin(theta);
      EXPECT_NEAR(eval_oprl(cheb, n, std::cos(theta)).p_n.real(), expected, 1e-11 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST(Recursion, ThreeTermResidualProperty) {
  for (std::uint32_t seed = 1; seed <= 30; ++seed) {
    SCOPED_TRACE(seed);
    Gen g(seed);
    const PeriodicJacobi model = g.jacobi(g.integer(1, 6));
    const long n = g.integer(1, 60);
    const cplx x{g.uniform(-4.0, 4.0), g.uniform(-0.5, 0.5)};
    const OprlValues hi = eval_oprl(model, n + 1, x);
    const OprlValues lo = eval_oprl(model, n, x);
    const cplx pn = hi.p_prev;
    EXPECT_LT(std::abs(pn - lo.p_n), 1e-12 * std::max(1.0, std::abs(pn)));
    const cplx residual = x * pn - model.a(n + 1) * hi.p_n - model.b(n + 1) * pn - model.a(n) * lo.p_prev;
    const double scale = std::max({1.0, std::abs(hi.p_n), std::abs(pn), std::abs(lo.p_prev)});
    EXPECT_LT(std::abs(residual), 1e-10 * scale);
  }
}

TEST(Recursion, FirstPolynomials) {
  const PeriodicJacobi model({2.0, 0.5}, {1.0, -1.0});
  EXPECT_DOUBLE_EQ(eval_oprl(model, 1, 3.0).p_n.real(), 1.0);
  EXPECT_DOUBLE_EQ(eval_oprl(model, 1, 3.0).p_prev.real(), 1.0);
  // p_2 = ((x - b_2) p_1 - a_1 p_0) / a_2
  EXPECT_DOUBLE_EQ(eval_oprl(model, 2, 3.0).p_n.real(), (4.0 * 1.0 - 2.0) / 0.5);
}

TEST(Recursion, TransferMatchesDirectProduct) {
  for (std::uint32_t seed = 1; seed <= 40; ++seed) {
    SCOPED_TRACE(seed);
    Gen g(seed);
    const int p = g.integer(1, 7);
    const Model model = seed % 2 ? Model{g.jacobi(p)} : Model{g.verblunsky(2 * p)};
    const long n = g.integer(0, 120);
    const cplx z = kind_of(model) == ModelKind::Jacobi ? cplx{g.uniform(-3, 3), g.uniform(-0.3, 0.3)}
                                                       : g.disk_point(1.1);
    EXPECT_LT(relative_distance(transfer(model, n, z), transfer_direct(model, n, z)), 1e-10);
  }
}

TEST(Recursion, UnimodularDeterminant) {
  Gen g(11);
  const PeriodicJacobi j = g.jacobi(4);
  const cplx x{0.4, 0.2};
  EXPECT_LT(std::abs(transfer(j, 4, x).det() - 1.0), 1e-12);

  const PeriodicVerblunsky v = g.verblunsky(4);
  const cplx z{0.3, -0.5};
  EXPECT_LT(std::abs(transfer(Model{v}, 4, z).det() - std::pow(z, 4)), 1e-12);
}

TEST(Recursion, OpucMatchesMonicSzego) {
  for (std::uint32_t seed = 1; seed <= 30; ++seed) {
    SCOPED_TRACE(seed);
    Gen g(seed);
    const PeriodicVerblunsky model = g.verblunsky(2 * g.integer(1, 4));
    const long n = g.integer(0, 40);
    const cplx z = g.disk_point(1.3);
    const auto [phi, star] = szego_monic(model.alpha_values(), n, z);
    const double norm = monic_from_orthonormal(model, n);
    const OpucValues v = eval_opuc(model, n, z);
    EXPECT_LT(std::abs(v.phi * norm - phi), 1e-11 * std::max(1.0, std::abs(phi)));
    EXPECT_LT(std::abs(v.phi_star * norm - star), 1e-11 * std::max(1.0, std::abs(star)));
  }
}

TEST(Recursion, ReversedPolynomialOnCircle) {
  Gen g(5);
  const PeriodicVerblunsky model = g.verblunsky(4);
  for (int n : {3, 8, 21}) {
    const cplx z = std::polar(1.0, g.uniform(0, 6.28));
    const OpucValues v = eval_opuc(model, n, z);
    EXPECT_LT(std::abs(v.phi_star - std::pow(z, n) * std::conj(v.phi)), 1e-12 * std::max(1.0, std::abs(v.phi)));
  }
}

TEST(Recursion, DoubledModelEvaluatesAtSquare) {
  const std::vector<cplx> alpha{cplx{0.3, 0.2}, cplx{-0.4}, cplx{0.0, 0.25}};
  const PeriodicVerblunsky doubled(alpha);
  Gen g(17);
  for (int n : {1, 2, 5, 9, 14}) {
    const cplx z = g.disk_point(1.2);
    const auto [phi, star] = szego_monic(alpha, n, z * z);
    const cplx got = eval_opuc(doubled, 2 * n, z).phi * monic_from_orthonormal(doubled, 2 * n);
    EXPECT_LT(std::abs(got - phi), 1e-12 * std::max(1.0, std::abs(phi)));
  }
}

TEST(Recursion, MonicFactor) {
  const PeriodicJacobi j({2.0, 0.5, 3.0}, {0.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(monic_from_orthonormal(j, 0), 1.0);
  EXPECT_DOUBLE_EQ(monic_from_orthonormal(j, 4), 2.0 * 0.5 * 3.0 * 2.0);
  const PeriodicVerblunsky v({cplx{0.6}, cplx{0.0, 0.8}});
  EXPECT_NEAR(monic_from_orthonormal(v, 3), 0.8 * 0.6 * 0.8, 1e-15);
}

TEST(Recursion, PeriodPolyMatrixMatchesTransfer) {
  Gen g(3);
  const PeriodicJacobi j = g.jacobi(5);
  const PeriodicVerblunsky v = g.verblunsky(6);
  for (int i = 0; i < 5; ++i) {
    const cplx z = g.disk_point(2.0);
    EXPECT_LT(relative_distance(period_poly_matrix(j).eval(z), transfer(j, 5, z)), 1e-12);
    EXPECT_LT(relative_distance(period_poly_matrix(v).eval(z), transfer(v, 6, z)), 1e-12);
  }
}

TEST(Recursion, RandomModelsAreReproducible) {
  EXPECT_EQ(random_jacobi(3, 3), random_jacobi(3, 3));
  EXPECT_FALSE(random_jacobi(3, 3) == random_jacobi(4, 3));
  EXPECT_EQ(random_verblunsky(7, 2), random_verblunsky(7, 2));
  const PeriodicJacobi j = random_jacobi(9, 6);
  for (double a : j.a_values()) EXPECT_GT(a, 0.0);
  const PeriodicVerblunsky v = random_verblunsky(9, 6);
  for (cplx alpha : v.alpha_values()) EXPECT_LT(std::abs(alpha), 1.0);
}

}  // namespace
}  // namespace opz

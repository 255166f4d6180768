#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "generators.hpp"
#include "opz/tridiagonal.hpp"

namespace opz {
namespace {

Eigen::VectorXd eigen_reference(const std::vector<double>& diag, const std::vector<double>& off) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = diag[i];
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = off[i];
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

TEST(Tridiagonal, MatchesDenseSolver) {
  for (std::uint32_t seed = 1; seed <= 30; ++seed) {
    SCOPED_TRACE(seed);
    testing::Gen g(seed);
    const int n = g.integer(1, 80);
    std::vector<double> diag(n), off(n > 0 ? n - 1 : 0);
    for (double& d : diag) d = g.uniform(-2.0, 2.0);
    for (double& o : off) o = g.uniform(0.1, 1.5);
    const std::vector<double> got = tridiagonal_eigenvalues(diag, off);
    const Eigen::VectorXd ref = eigen_reference(diag, off);
    ASSERT_EQ(static_cast<int>(got.size()), n);
    EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
    for (int i = 0; i < n; ++i) EXPECT_NEAR(got[i], ref(i), 1e-12 * (1.0 + std::abs(ref(i))));
  }
}

TEST(Tridiagonal, SturmCountAgainstReference) {
  testing::Gen g(4);
  std::vector<double> diag(25), off(24);
  for (double& d : diag) d = g.uniform(-1.0, 1.0);
  for (double& o : off) o = g.uniform(0.2, 1.0);
  const Eigen::VectorXd ref = eigen_reference(diag, off);
  for (int i = 0; i < 20; ++i) {
    const double x = g.uniform(-3.0, 3.0);
    const int below = static_cast<int>(std::count_if(ref.data(), ref.data() + ref.size(), [&](double e) { return e < x; }));
    EXPECT_EQ(sturm_count(diag, off, x), below);
  }
}

TEST(Tridiagonal, WilkinsonClosePairs) {
  // W21+: the two largest eigenvalues agree to about 1e-14.
  std::vector<double> diag(21), off(20, 1.0);
  for (int i = 0; i < 21; ++i) diag[i] = std::abs(10 - i);
  const std::vector<double> got = tridiagonal_eigenvalues(diag, off);
  const Eigen::VectorXd ref = eigen_reference(diag, off);
  for (int i = 0; i < 21; ++i) EXPECT_NEAR(got[i], ref(i), 1e-12);
  EXPECT_NEAR(got[20], 10.746194182903393, 1e-12);
}

TEST(Tridiagonal, ChebyshevZeros) {
  const int n = 30;
  const std::vector<double> diag(n, 0.0), off(n - 1, 0.5);
  const std::vector<double> got = tridiagonal_eigenvalues(diag, off);
  for (int k = 1; k <= n; ++k) EXPECT_NEAR(got[n - k], std::cos(k * 3.141592653589793 / (n + 1)), 1e-14);
}

}  // namespace
}  // namespace opz

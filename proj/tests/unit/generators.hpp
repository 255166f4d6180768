#ifndef OPZ_TESTS_GENERATORS_HPP
#define OPZ_TESTS_GENERATORS_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "opz/recursion.hpp"

namespace opz::testing {

/// Small seeded generator for property tests. Each case prints its seed on
/// failure through SCOPED_TRACE at the call site.
class Gen {
 public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  cplx disk_point(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, 2.0 * 3.141592653589793));
  }

  PeriodicJacobi jacobi(int p) {
    std::vector<double> a(p), b(p);
    for (int i = 0; i < p; ++i) {
      a[i] = uniform(0.3, 2.0);
      b[i] = uniform(-1.5, 1.5);
    }
    return PeriodicJacobi(std::move(a), std::move(b));
  }

  PeriodicVerblunsky verblunsky(int p, double max_modulus = 0.8) {
    std::vector<cplx> alpha(p);
    for (auto& x : alpha) x = disk_point(max_modulus);
    return PeriodicVerblunsky(std::move(alpha));
  }

 private:
  std::mt19937 rng_;
};

}  // namespace opz::testing

#endif  // OPZ_TESTS_GENERATORS_HPP

#ifndef OPZ_QUADRATURE_HPP
#define OPZ_QUADRATURE_HPP

#include <vector>

namespace opz {

struct GaussRule {
  std::vector<double> nodes;  ///< on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule. Rules are computed once and cached.
const GaussRule& gauss_legendre(int n);

}  // namespace opz

#endif  // OPZ_QUADRATURE_HPP

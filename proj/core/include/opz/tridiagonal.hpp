#ifndef OPZ_TRIDIAGONAL_HPP
#define OPZ_TRIDIAGONAL_HPP

#include <span>
#include <vector>

namespace opz {

/// Number of eigenvalues below x of the symmetric tridiagonal matrix with the
/// given diagonal and off-diagonal (size n and n-1).
int sturm_count(std::span<const double> diag, std::span<const double> offdiag, double x);

/// All eigenvalues, ascending, by Sturm-count bisection to machine precision.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag, std::span<const double> offdiag);

}  // namespace opz

#endif  // OPZ_TRIDIAGONAL_HPP

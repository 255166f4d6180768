#ifndef OPZ_EQUILIBRIUM_HPP
#define OPZ_EQUILIBRIUM_HPP

#include <functional>

#include "opz/discriminant.hpp"

namespace opz {

/// Integrated density of states k at a spectral parameter t (x for OPRL,
/// theta for OPUC) lying in a band. On band j (0-based)
///   k = j/p + arccos(-orientation_j * Delta(t) / 2) / (pi p).
/// Throws Error(PointNotInBand) outside every band beyond 1e-12.
double k_of(const Spectrum& s, double t);

/// Inverse of k_of on band j (0-based) by monotone bisection.
/// Throws Error(InvalidArgument) if k is outside [j/p, (j+1)/p].
double k_inverse(const Spectrum& s, int band, double k);

/// dk/dt = |Delta'| / (pi p sqrt(4 - Delta^2)).
/// Throws Error(DensitySingularity) at band edges, Error(PointNotInBand) off the bands.
double density(const Spectrum& s, double t);

struct BandIntegral {
  double value = 0;
  int nodes = 0;  ///< Gauss nodes per band in the accepted rule
};

/// sum_j integral over band j of f(t) dk(t), in the variable u = k with a
/// Gauss-Legendre rule of 50 nodes per band, doubled until two successive
/// values agree to rel_tol. Throws Error(QuadratureNotConverged) after three
/// doublings.
BandIntegral integrate_dk(const Spectrum& s, const std::function<double(double)>& f, double rel_tol = 1e-9);

struct ThoulessResult {
  double lyapunov = 0;   ///< from Gamma_+
  double potential = 0;  ///< integral of log|z - x| dk(x)
  double log_capacity = 0;
  double residual = 0;   ///< |lyapunov - (potential - log_capacity)|
  int nodes = 0;
};

/// Thouless formula gamma(z) = integral log|z - x| dk(x) - log C_B.
/// Throws Error(InvalidArgument) when z is within 1e-3 * diameter of the
/// bands (diameter in the plane: beta_p - alpha_1, or 2 on the circle).
ThoulessResult thouless_check(const Spectrum& s, cplx z);

}  // namespace opz

#endif  // OPZ_EQUILIBRIUM_HPP

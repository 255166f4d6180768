#ifndef OPZ_FLOQUET_HPP
#define OPZ_FLOQUET_HPP

#include <vector>

#include "opz/discriminant.hpp"

namespace opz {

enum class DirichletSign { Plus, Minus, Edge };

struct DirichletDatum {
  /// x_j (OPRL) or the angle of z_j in [0, 2pi) (OPUC).
  double location = 0;
  cplx point;
  /// Eigenvalue of the (normalised) monodromy on the Dirichlet eigenvector.
  cplx multiplier;
  DirichletSign sign = DirichletSign::Edge;
  int gap = -1;
  bool closed_gap = false;
};

inline constexpr double kEdgeMultiplierTol = 1e-8;

/// OPRL: the p-1 zeros of p_{p-1}; OPUC: the p zeros of phi_p - phi_p^* on the
/// circle. Throws Error(DirichletOutsideGap) if a zero misses its gap closure
/// by more than 1e-8.
std::vector<DirichletDatum> dirichlet_data(const Spectrum& s);

struct FloquetSplit {
  Mat2 p_plus;
  Mat2 p_minus;
  cplx a;
  cplx b;
  GammaPair gamma;
};

/// Spectral projections of M = T_p (OPRL) or z^{-p/2} T_p (OPUC) and the
/// coefficients a(z), b(z). Throws Error(NearBranchPoint) when
/// |Gamma_+ - Gamma_-| < 1e-12.
FloquetSplit floquet_split(const Discriminant& d, cplx z);

/// Same at a spectral parameter on the real line / circle, with band values
/// taken from the given side.
FloquetSplit floquet_split_boundary(const Discriminant& d, double t, Side side = Side::Upper);

struct JostValue {
  cplx j;
  cplx tilde;
};

/// j_b and tilde j_b. OPRL: p_{mp+b-1} = j_b Gamma_+^m + tilde_j_b Gamma_-^m.
/// OPUC: phi_{mp+b} = z^{mp/2} (j_b Gamma_+^m + tilde_j_b Gamma_-^m).
/// Offsets b in [0, p]. Throws Error(InvalidArgument) otherwise.
JostValue jost(const Spectrum& s, int b, cplx z);
JostValue jost_boundary(const Spectrum& s, int b, double t, Side side = Side::Upper);

/// Upper bound on off-band zeros of j_b: 2p+2b-3 (OPRL, b >= 1; p-1 for
/// b = 0 where j_0 = a) and 2p+2b-1 (OPUC).
int jost_zero_bound(const Spectrum& s, int b);

struct BandPhase {
  int band = 0;
  std::vector<double> t;        ///< grid on the open band
  std::vector<double> k;        ///< k(t)
  std::vector<double> phase;    ///< gamma_b (OPRL) or A (OPUC), unwrapped
  std::vector<double> modulus;  ///< |j_b| (OPRL) or |tilde j_b| (OPUC)
  double increment = 0;         ///< phase.back() - phase.front()
};

/// OPRL: gamma_b(x) = arg j_b(x + i0); then
///   p_{mp+b-1}(x) = (-1)^{mp} 2 |j_b(x)| cos(pi m p k(x) - gamma_b(x)).
/// OPUC: A(theta) = arg(-j_b / tilde j_b) at r -> 1 from inside.
/// Grid of 2048 interior points, doubled while any step exceeds pi/2.
/// Throws Error(SingularPointOnBand) if the modulus drops below 1e-10.
BandPhase band_phase(const Spectrum& s, int b, int band);

struct JostZero {
  cplx point;
  int multiplicity = 1;
  double residual = 0;  ///< |j_b(point)|
};

struct JostZeros {
  int offset = 0;
  std::vector<JostZero> zeros;
  int count = 0;  ///< with multiplicity
  int bound = 0;
};

/// Off-band zeros of j_b. OPRL: sign changes and touching minima on the real
/// gaps and the outer intervals of a box 1.5 times the spectral diameter.
/// OPUC: winding-number subdivision of the disk |z| <= 1 - 1e-3 and of thin
/// shells across each open gap. Multiplicity from the winding number on a
/// small circle. Throws Error(CountExceedsBound) if the total exceeds
/// jost_zero_bound.
JostZeros jost_offband_zeros(const Spectrum& s, int b);

struct SingularPoint {
  double theta = 0;
  double modulus = 0;
  int order = 1;
};

/// Points in band interiors where |j_b| < 1e-8 (OPUC). The OPRL scan must be
/// empty since j_b never vanishes on OPRL bands; it runs the same grid on x + i0.
std::vector<SingularPoint> singular_point_scan(const Spectrum& s, int b);

}  // namespace opz

#endif  // OPZ_FLOQUET_HPP

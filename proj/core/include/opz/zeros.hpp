#ifndef OPZ_ZEROS_HPP
#define OPZ_ZEROS_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opz/discriminant.hpp"
#include "opz/floquet.hpp"

namespace opz {

enum class Placement { Band, Edge, Gap, OffSpectrum };

std::string_view to_string(Placement p) noexcept;

struct ZeroReport {
  ModelKind kind = ModelKind::Jacobi;
  int n = 0;
  std::vector<cplx> zeros;       ///< ascending (OPRL) / by angle (OPUC)
  std::vector<double> residuals; ///< scale-free residual per zero
  std::vector<Placement> placement;
  std::vector<int> region;       ///< band or gap index per placement, -1 otherwise
  double worst_residual = 0;
  bool residual_too_large = false;
};

inline constexpr double kResidualWarn = 1e-8;

/// Zeros of p_n: eigenvalues of the n x n Jacobi matrix by Sturm bisection.
/// Residual is the smaller of |p_n(x)| / ||(p_0, ..., p_n)(x)|| and the
/// relative Newton step |p_n(x) / p_n'(x)| / max(1, |x|). Requires 1 <= n <= 2000.
ZeroReport oprl_zeros(const Spectrum& s, int n);

/// Zeros of phi_n by Aberth iteration on the Szego recursion, started from
/// equilibrium-distributed angles on the circle of radius max(1/2, 1 - 2/n). Exact zeros at
/// the origin (vanishing low coefficients of Phi_n) are deflated first.
/// Residual is the smaller of |phi_n(z)| / ||(phi_0, ..., phi_n)(z)|| and the
/// Newton step |Phi_n(z) / Phi_n'(z)|. Requires 1 <= n <= 500.
/// Throws Error(RootFindingFailure) if 500 sweeps do not converge.
ZeroReport opuc_zeros(const Spectrum& s, int n);

/// oprl_zeros or opuc_zeros by model kind.
ZeroReport polynomial_zeros(const Spectrum& s, int n);

/// Angles in [0, 2pi), ascending, of the n zeros of Phi_n - Phi_n^* from sign
/// changes of Im(e^{-in theta/2} phi_n(e^{i theta})) on a 16n grid.
/// n must be even. Throws Error(MissedZero) if fewer than n are found after
/// one grid doubling.
std::vector<double> para_zeros(const PeriodicVerblunsky& model, int n);

/// Exact zeros of degree mp - 1 (OPRL, points x) or mp (OPUC, angles):
/// Dirichlet points plus k^{-1}((j-1)/p + q/(mp)), q = 1..m-1, in every band.
std::vector<double> predict_exact(const Spectrum& s, int m);

/// Both lists sorted and paired in order. Angles are first lifted into
/// [c, c + 2pi) with c the middle of the widest gap of predicted.
/// Throws Error(InvalidArgument) when the sizes differ.
std::vector<std::pair<double, double>> match_pairs(const std::vector<double>& predicted,
                                                   const std::vector<double>& computed, bool angles);

/// Largest pairwise distance after sorting both lists and pairing in order.
/// For angles the lists are cut at the middle of the widest gap of predicted.
/// Returns +inf when the sizes differ.
double match_distance(const std::vector<double>& predicted, const std::vector<double>& computed, bool angles);

struct BandClock {
  int band = 0;
  int count = 0;
  std::vector<double> deviations;  ///< n |k(x_{l+1}) - k(x_l) - 1/n|
  double max_deviation = 0;
  double max_radial = 0;           ///< OPUC: max 1 - |z| over counted zeros
};

struct ClockStats {
  int n = 0;
  std::vector<BandClock> bands;
  int edge_count = 0;
  int gap_count = 0;
  int off_count = 0;
  double max_deviation = 0;
};

/// OPRL: a zero counts in band j when it lies in (alpha_j + 1e-10,
/// beta_j - 1e-10). OPUC: when its argument lies in band j and
/// 1 - |z| <= n^{-1/2}.
ClockStats clock_stats(const Spectrum& s, const ZeroReport& report);

struct BoundViolation {
  std::string check;
  int n = 0;
  int band = 0;
  std::string detail;
};

struct CountTable {
  int n_min = 1;
  int n_max = 0;
  std::vector<std::vector<int>> counts;  ///< counts[n - n_min][band]
  /// OPUC: max over bands of |N - n/p| for each n.
  std::vector<double> max_excess;
  std::vector<BoundViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Per-band counts for every n in [n_min, n_max]. OPRL checks the counting
/// bounds |N^{(mp+b,j)} - (m-1)| <= min(b+1, p-b) for every representation
/// with -1 <= b <= p-1, |N^{(n,j)} - n/p| <= 1 + p/2 and
/// |N^{(n,j)} - N^{(n+1,j)}| <= 1. OPUC records counts and excesses only.
CountTable count_bounds_check(const Spectrum& s, int n_min, int n_max);

struct LimitCluster {
  cplx point;
  std::vector<double> displacements;
  bool matched = false;
  std::string explanation;  ///< "jost-zero", "mass-point" or "unexplained"
  double distance = 0;      ///< to the matched object
};

struct LimitReport {
  int offset = 0;
  std::vector<int> m_list;
  bool refused = false;
  std::string note;
  std::vector<LimitCluster> clusters;
  bool unexplained = false;
};

/// Tracks off-band zeros of p_{mp+b-1} (OPRL) or phi_{mp+b} (OPUC) across
/// m_list. A zero of the last polynomial is a cluster when the nearest-zero
/// displacements along m_list do not increase and the last is <= 1e-6.
/// Clusters within 1e-4 of a j_b zero or a Dirichlet mass point are
/// explained. The free OPUC case (all alpha = 0) is refused.
/// Throws Error(InvalidArgument) unless m_list is increasing with >= 3 entries.
LimitReport limit_points(const Spectrum& s, int b, const std::vector<int>& m_list);

}  // namespace opz

#endif  // OPZ_ZEROS_HPP

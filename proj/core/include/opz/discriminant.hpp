#ifndef OPZ_DISCRIMINANT_HPP
#define OPZ_DISCRIMINANT_HPP

#include <vector>

#include "opz/matrix.hpp"
#include "opz/polynomial.hpp"
#include "opz/recursion.hpp"

namespace opz {

/// Tr T_p(z) as a polynomial, with evaluators for the discriminant.
///
/// OPRL: Delta(z) = Tr T_p(z).
/// OPUC: Delta(z) = z^{-p/2} Tr T_p(z), real on the unit circle.
class Discriminant {
 public:
  /// Throws Error(PeriodTooLarge) if p > kMaxPolyPeriod.
  explicit Discriminant(Model model);

  ModelKind kind() const noexcept { return kind_; }
  int period() const noexcept { return p_; }
  const Poly& trace_poly() const noexcept { return trace_; }
  const Model& model() const noexcept { return model_; }

  cplx operator()(cplx z) const;
  /// dDelta/dz.
  cplx derivative(cplx z) const;

  /// OPRL on the real line.
  double on_line(double x) const;
  double on_line_derivative(double x) const;

  /// OPUC at e^{i theta}: the real value and dDelta/dtheta.
  double on_circle(double theta) const;
  double on_circle_derivative(double theta) const;

  /// Real value and derivative along the spectral parameter: x for OPRL,
  /// theta for OPUC.
  double real_value(double t) const { return kind_ == ModelKind::Jacobi ? on_line(t) : on_circle(t); }
  double real_derivative(double t) const {
    return kind_ == ModelKind::Jacobi ? on_line_derivative(t) : on_circle_derivative(t);
  }

  /// Maps the spectral parameter to the complex plane: x or e^{i theta}.
  cplx point(double t) const { return kind_ == ModelKind::Jacobi ? cplx{t, 0.0} : std::polar(1.0, t); }

 private:
  Model model_;
  ModelKind kind_;
  int p_;
  Poly trace_;
  Poly trace_deriv_;
  std::vector<double> real_trace_;
  std::vector<double> real_trace_deriv_;
};

Discriminant discriminant(const Model& model);

struct Band {
  double lo = 0;
  double hi = 0;
  /// Sign of Delta' (OPRL) or dDelta/dtheta (OPUC) inside the band.
  int orientation = 1;
};

struct Gap {
  double lo = 0;
  double hi = 0;
  bool closed = false;
};

/// Bands and gaps. OPRL values are points on the line; OPUC values are angles
/// with bands[0].lo in [0, 2pi) and increasing lo, so the last band may end
/// past 2pi. OPUC has p gaps (the last one wraps), OPRL has p-1.
struct BandStructure {
  ModelKind kind = ModelKind::Jacobi;
  std::vector<double> edges;
  std::vector<Band> bands;
  std::vector<Gap> gaps;
  /// beta_p - alpha_1 for OPRL; 2 pi for OPUC (angles).
  double diameter = 0;

  /// 0-based band index containing t within slack, or -1. OPUC angles are
  /// reduced modulo 2 pi.
  int band_of(double t, double slack = 1e-12) const;
  /// 0-based index of the open gap strictly containing t, or -1.
  int gap_of(double t) const;
  /// Distance from a complex point to the union of bands.
  double distance_to_bands(cplx z) const;
};

inline constexpr double kClosedGapRelTol = 1e-9;
inline constexpr double kEdgeResidualTol = 1e-8;

/// Throws Error(RootFindingFailure) when an edge residual exceeds
/// kEdgeResidualTol or the critical-point scan is inconsistent.
BandStructure band_edges(const Discriminant& d);

struct GammaPair {
  cplx plus;
  cplx minus;
  /// ||Gamma_+| - |Gamma_-|| < 1e-12: the branch choice is not determined.
  bool ambiguous = false;
};

GammaPair gamma_pm(const Discriminant& d, cplx z);

/// Side from which band values are taken: Upper is x + i0 (OPRL) or r -> 1
/// from inside (OPUC); Lower is x - i0 or r -> 1 from outside.
enum class Side { Upper, Lower };

/// Exact boundary values of Gamma_+- at a spectral parameter t on a band.
/// Off the bands on the real line / circle it reduces to gamma_pm.
GammaPair gamma_boundary(const Discriminant& d, double t, Side side = Side::Upper);

double lyapunov(const Discriminant& d, cplx z);

/// (prod a_j)^{1/p} or (prod rho_j)^{1/p}.
double capacity(const Model& model);

/// Discriminant and band structure bundled together.
struct Spectrum {
  Discriminant disc;
  BandStructure bands;

  explicit Spectrum(const Model& model) : disc(model), bands(band_edges(disc)) {}
  const Model& model() const noexcept { return disc.model(); }
  ModelKind kind() const noexcept { return disc.kind(); }
  int period() const noexcept { return disc.period(); }
};

}  // namespace opz

#endif  // OPZ_DISCRIMINANT_HPP

#ifndef OPZ_RECURSION_HPP
#define OPZ_RECURSION_HPP

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "opz/matrix.hpp"
#include "opz/polynomial.hpp"

namespace opz {

/// Periodic Jacobi parameters a_1..a_p (> 0) and b_1..b_p.
///
/// Storage is 0-based; the accessors take the 1-based recursion index and
/// reduce it cyclically, so a(0) == a(p).
class PeriodicJacobi {
 public:
  /// Throws Error(InvalidModel) unless sizes match, p >= 1 and every a > 0.
  PeriodicJacobi(std::vector<double> a, std::vector<double> b);

  int period() const noexcept { return static_cast<int>(a_.size()); }

  double a(long n) const noexcept { return a_[slot(n)]; }
  double b(long n) const noexcept { return b_[slot(n)]; }

  std::span<const double> a_values() const noexcept { return a_; }
  std::span<const double> b_values() const noexcept { return b_; }

  friend bool operator==(const PeriodicJacobi&, const PeriodicJacobi&) = default;

 private:
  std::size_t slot(long n) const noexcept {
    const long p = period();
    return static_cast<std::size_t>((((n - 1) % p) + p) % p);
  }

  std::vector<double> a_;
  std::vector<double> b_;
};

/// Periodic Verblunsky coefficients alpha_0..alpha_{p-1} with p even.
///
/// Odd input periods are sieved to period 2p by interleaving zeros so that
/// Phi_{2n}(z) of the stored model equals Phi_n(z^2) of the input; doubled()
/// records that this happened.
class PeriodicVerblunsky {
 public:
  /// Throws Error(InvalidModel) on an empty list or any |alpha| >= 1.
  explicit PeriodicVerblunsky(std::vector<cplx> alpha);

  int period() const noexcept { return static_cast<int>(alpha_.size()); }
  bool doubled() const noexcept { return doubled_; }

  cplx alpha(long k) const noexcept { return alpha_[slot(k)]; }
  double rho(long k) const noexcept { return rho_[slot(k)]; }

  std::span<const cplx> alpha_values() const noexcept { return alpha_; }
  std::span<const double> rho_values() const noexcept { return rho_; }
  /// Coefficients as supplied, before any doubling.
  std::span<const cplx> original_alpha() const noexcept { return original_; }

  bool all_zero() const noexcept;

  friend bool operator==(const PeriodicVerblunsky&, const PeriodicVerblunsky&) = default;

 private:
  std::size_t slot(long k) const noexcept {
    const long p = period();
    return static_cast<std::size_t>(((k % p) + p) % p);
  }

  std::vector<cplx> original_;
  std::vector<cplx> alpha_;
  std::vector<double> rho_;
  bool doubled_ = false;
};

using Model = std::variant<PeriodicJacobi, PeriodicVerblunsky>;

enum class ModelKind { Jacobi, Verblunsky };

inline ModelKind kind_of(const Model& m) {
  return std::holds_alternative<PeriodicJacobi>(m) ? ModelKind::Jacobi : ModelKind::Verblunsky;
}
inline int period_of(const Model& m) {
  return std::visit([](const auto& x) { return x.period(); }, m);
}

/// Sieves an odd-period coefficient list: (a, b, c) -> (0, a, 0, b, 0, c).
std::vector<cplx> double_odd_period(std::span<const cplx> alpha);

/// One-step matrix A_k(z) = (1/a_{k+1}) [[z - b_{k+1}, -a_k], [a_{k+1}, 0]].
Mat2 step_matrix_oprl(const PeriodicJacobi& model, long k, cplx z);

/// One-step matrix A_k(z) = (1/rho_k) [[z, -conj(alpha_k)], [-z alpha_k, 1]].
Mat2 step_matrix_opuc(const PeriodicVerblunsky& model, long k, cplx z);

/// T_n = A_{n-1} ... A_0, computed as T_b (T_p)^m with n = mp + b and the
/// power taken by repeated squaring.
Mat2 transfer(const PeriodicJacobi& model, long n, cplx z);
Mat2 transfer(const PeriodicVerblunsky& model, long n, cplx z);
Mat2 transfer(const Model& model, long n, cplx z);

/// Plain left-to-right product of n step matrices. Reference path for tests.
Mat2 transfer_direct(const Model& model, long n, cplx z);

/// Entries of T_n: [[p_n, q_{n-1}], [p_{n-1}, q_{n-2}]].
struct OprlValues {
  cplx p_n;
  cplx p_prev;  ///< p_{n-1}
  cplx q_prev;  ///< q_{n-1}
  cplx q_prev2; ///< q_{n-2}
};
OprlValues eval_oprl(const PeriodicJacobi& model, long n, cplx x);

/// (phi_n, phi_n^*) = T_n (1,1)^T and (psi_n, -psi_n^*) = T_n (1,-1)^T.
struct OpucValues {
  cplx phi;
  cplx phi_star;
  cplx psi;
  cplx psi_star;
};
OpucValues eval_opuc(const PeriodicVerblunsky& model, long n, cplx z);

/// Positive factor turning the orthonormal polynomial into the monic one:
/// prod_{j=1}^n a_j for OPRL, prod_{j=0}^{n-1} rho_j for OPUC.
double monic_from_orthonormal(const PeriodicJacobi& model, long n);
double monic_from_orthonormal(const PeriodicVerblunsky& model, long n);

/// T_p with polynomial entries (p <= kMaxPolyPeriod).
PolyMatrix period_poly_matrix(const PeriodicJacobi& model);
PolyMatrix period_poly_matrix(const PeriodicVerblunsky& model);

inline constexpr int kMaxPolyPeriod = 16;

/// Deterministic pseudo-random models built from raw mt19937 output, so the
/// same seed yields bit-identical coefficients on every platform.
PeriodicJacobi random_jacobi(std::uint32_t seed, int p);
PeriodicVerblunsky random_verblunsky(std::uint32_t seed, int p);

}  // namespace opz

#endif  // OPZ_RECURSION_HPP

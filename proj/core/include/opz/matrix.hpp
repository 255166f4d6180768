#ifndef OPZ_MATRIX_HPP
#define OPZ_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>

namespace opz {

using cplx = std::complex<double>;

/// Dense 2x2 complex matrix. Used for one-step and transfer matrices.
struct Mat2 {
  cplx m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};

  static constexpr Mat2 identity() { return {}; }

  cplx det() const { return m11 * m22 - m12 * m21; }
  cplx trace() const { return m11 + m22; }

  /// Frobenius norm.
  double norm() const {
    return std::sqrt(std::norm(m11) + std::norm(m12) + std::norm(m21) + std::norm(m22));
  }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
            x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
  }
  friend Mat2 operator*(cplx s, const Mat2& x) {
    return {s * x.m11, s * x.m12, s * x.m21, s * x.m22};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.m11 + y.m11, x.m12 + y.m12, x.m21 + y.m21, x.m22 + y.m22};
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.m11 - y.m11, x.m12 - y.m12, x.m21 - y.m21, x.m22 - y.m22};
  }
};

using TransferMatrix = Mat2;

/// Largest entrywise distance, scaled by the larger Frobenius norm (or 1).
inline double relative_distance(const Mat2& x, const Mat2& y) {
  const Mat2 d = x - y;
  const double diff = std::max({std::abs(d.m11), std::abs(d.m12), std::abs(d.m21), std::abs(d.m22)});
  return diff / std::max({1.0, x.norm(), y.norm()});
}

}  // namespace opz

#endif  // OPZ_MATRIX_HPP

#include "opz/recursion.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "opz/error.hpp"

namespace opz {

PeriodicJacobi::PeriodicJacobi(std::vector<double> a, std::vector<double> b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty()) throw Error(ErrorKind::InvalidModel, "jacobi model needs at least one coefficient");
  if (a_.size() != b_.size()) throw Error(ErrorKind::InvalidModel, "a and b must have equal length");
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!(a_[i] > 0.0) || !std::isfinite(a_[i])) {
      throw Error(ErrorKind::InvalidModel, "a_" + std::to_string(i + 1) + " must be a positive finite number");
    }
    if (!std::isfinite(b_[i])) throw Error(ErrorKind::InvalidModel, "b_" + std::to_string(i + 1) + " must be finite");
  }
}

PeriodicVerblunsky::PeriodicVerblunsky(std::vector<cplx> alpha) : original_(std::move(alpha)) {
  if (original_.empty()) throw Error(ErrorKind::InvalidModel, "verblunsky model needs at least one coefficient");
  for (std::size_t i = 0; i < original_.size(); ++i) {
    const double r = std::abs(original_[i]);
    if (!(r < 1.0) || !std::isfinite(r)) {
      throw Error(ErrorKind::InvalidModel, "alpha_" + std::to_string(i) + " must lie strictly inside the unit disk");
    }
  }
  if (original_.size() % 2 == 1) {
    alpha_ = double_odd_period(original_);
    doubled_ = true;
  } else {
    alpha_ = original_;
  }
  rho_.reserve(alpha_.size());
  for (cplx x : alpha_) {
    const double r = std::abs(x);
    rho_.push_back(std::sqrt((1.0 - r) * (1.0 + r)));
  }
}

bool PeriodicVerblunsky::all_zero() const noexcept {
  for (cplx x : alpha_) {
    if (x != cplx{0.0}) return false;
  }
  return true;
}

std::vector<cplx> double_odd_period(std::span<const cplx> alpha) {
  std::vector<cplx> out;
  out.reserve(2 * alpha.size());
  for (cplx x : alpha) {
    out.push_back(cplx{0.0});
    out.push_back(x);
  }
  return out;
}

Mat2 step_matrix_oprl(const PeriodicJacobi& model, long k, cplx z) {
  const double next = model.a(k + 1);
  const double inv = 1.0 / next;
  return {(z - model.b(k + 1)) * inv, cplx{-model.a(k) * inv}, cplx{1.0}, cplx{0.0}};
}

Mat2 step_matrix_opuc(const PeriodicVerblunsky& model, long k, cplx z) {
  const double inv = 1.0 / model.rho(k);
  const cplx al = model.alpha(k);
  return {z * inv, -std::conj(al) * inv, -z * al * inv, cplx{inv}};
}

namespace {

template <class M, class Step>
Mat2 transfer_impl(const M& model, long n, cplx z, Step step) {
  const long p = model.period();
  const long m = n / p;
  const long b = n % p;
  Mat2 tb;
  for (long k = 0; k < b; ++k) tb = step(model, k, z) * tb;
  if (m == 0) return tb;
  Mat2 tp;
  for (long k = 0; k < p; ++k) tp = step(model, k, z) * tp;
  Mat2 power;
  Mat2 base = tp;
  for (long e = m; e > 0; e >>= 1) {
    if (e & 1) power = power * base;
    if (e > 1) base = base * base;
  }
  return tb * power;
}

}  // namespace

Mat2 transfer(const PeriodicJacobi& model, long n, cplx z) { return transfer_impl(model, n, z, step_matrix_oprl); }

Mat2 transfer(const PeriodicVerblunsky& model, long n, cplx z) { return transfer_impl(model, n, z, step_matrix_opuc); }

Mat2 transfer(const Model& model, long n, cplx z) {
  return std::visit([&](const auto& m) { return transfer(m, n, z); }, model);
}

Mat2 transfer_direct(const Model& model, long n, cplx z) {
  Mat2 t;
  if (const auto* j = std::get_if<PeriodicJacobi>(&model)) {
    for (long k = 0; k < n; ++k) t = step_matrix_oprl(*j, k, z) * t;
  } else {
    const auto& v = std::get<PeriodicVerblunsky>(model);
    for (long k = 0; k < n; ++k) t = step_matrix_opuc(v, k, z) * t;
  }
  return t;
}

OprlValues eval_oprl(const PeriodicJacobi& model, long n, cplx x) {
  const Mat2 t = transfer(model, n, x);
  return {t.m11, t.m21, t.m12, t.m22};
}

OpucValues eval_opuc(const PeriodicVerblunsky& model, long n, cplx z) {
  const Mat2 t = transfer(model, n, z);
  return {t.m11 + t.m12, t.m21 + t.m22, t.m11 - t.m12, t.m22 - t.m21};
}

double monic_from_orthonormal(const PeriodicJacobi& model, long n) {
  double s = 1.0;
  for (long j = 1; j <= n; ++j) s *= model.a(j);
  return s;
}

double monic_from_orthonormal(const PeriodicVerblunsky& model, long n) {
  double s = 1.0;
  for (long j = 0; j < n; ++j) s *= model.rho(j);
  return s;
}

PolyMatrix period_poly_matrix(const PeriodicJacobi& model) {
  PolyMatrix t;
  for (long k = 0; k < model.period(); ++k) {
    const double inv = 1.0 / model.a(k + 1);
    PolyMatrix step;
    step.e11 = {cplx{-model.b(k + 1) * inv}, cplx{inv}};
    step.e12 = {cplx{-model.a(k) * inv}};
    step.e21 = {cplx{1.0}};
    step.e22 = {cplx{0.0}};
    t = step * t;
  }
  return t;
}

PolyMatrix period_poly_matrix(const PeriodicVerblunsky& model) {
  PolyMatrix t;
  for (long k = 0; k < model.period(); ++k) {
    const double inv = 1.0 / model.rho(k);
    const cplx al = model.alpha(k);
    PolyMatrix step;
    step.e11 = {cplx{0.0}, cplx{inv}};
    step.e12 = {-std::conj(al) * inv};
    step.e21 = {cplx{0.0}, -al * inv};
    step.e22 = {cplx{inv}};
    t = step * t;
  }
  return t;
}

namespace {

double unit(std::mt19937& gen) { return static_cast<double>(gen()) / 4294967296.0; }

}  // namespace

PeriodicJacobi random_jacobi(std::uint32_t seed, int p) {
  if (p < 1) throw Error(ErrorKind::InvalidArgument, "period must be positive");
  std::mt19937 gen(seed);
  std::vector<double> a(static_cast<std::size_t>(p)), b(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) {
    a[static_cast<std::size_t>(i)] = 0.5 + unit(gen);
    b[static_cast<std::size_t>(i)] = -1.0 + 2.0 * unit(gen);
  }
  return {std::move(a), std::move(b)};
}

PeriodicVerblunsky random_verblunsky(std::uint32_t seed, int p) {
  if (p < 1) throw Error(ErrorKind::InvalidArgument, "period must be positive");
  std::mt19937 gen(seed);
  std::vector<cplx> alpha(static_cast<std::size_t>(p));
  for (auto& x : alpha) {
    const double r = 0.2 + 0.5 * unit(gen);
    const double phase = 2.0 * std::numbers::pi * unit(gen);
    x = std::polar(r, phase);
  }
  return PeriodicVerblunsky(std::move(alpha));
}

}  // namespace opz

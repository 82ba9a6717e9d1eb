#include "manifoldkit/spd.hpp"

#include "manifoldkit/kernels.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace manifoldkit::spd {

namespace {

struct SqrtPair {
  Matrix half;     // a^{1/2}
  Matrix inv_half; // a^{-1/2}
};

// One eigendecomposition serves both sandwiching products.
SqrtPair sqrt_pair(const Matrix& a, const char* who) {
  require_square(a, who);
  require_finite(a, who);
  if ((a - a.transpose()).norm() > tol::membership * std::max(1.0, a.norm()))
    fail(ErrorCode::NotSymmetric, std::string(who) + ": input not symmetric");
  const SymEig eig = sym_eig(symmetric_part(a), /*sym_tol=*/1.0);
  const double lmax = eig.lambda(0);
  const double lmin = eig.lambda(eig.lambda.size() - 1);
  if (lmin <= tol::definiteness * std::max(lmax, 0.0))
    fail(ErrorCode::NotPositiveDefinite,
         std::string(who) + ": min eigenvalue " + std::to_string(lmin) +
             " fails the definiteness threshold");
  SqrtPair out;
  const Vector root = eig.lambda.array().sqrt();
  out.half = eig.q * root.asDiagonal() * eig.q.transpose();
  out.inv_half =
      eig.q * root.array().inverse().matrix().asDiagonal() * eig.q.transpose();
  return out;
}

} // namespace

double membership_residual(const Matrix& a) {
  if (a.rows() != a.cols() || !a.allFinite())
    return std::numeric_limits<double>::infinity();
  const double asym = (a - a.transpose()).norm();
  const double lmin = min_eigenvalue_sym(a);
  const double lmax = std::abs(a.norm());
  const double shortfall =
      std::max(0.0, tol::definiteness * std::max(lmax, 0.0) - lmin);
  return std::max(asym, shortfall);
}

double tangency_residual(const Matrix& delta) {
  return (delta - delta.transpose()).norm();
}

double inner_natural(const Matrix& a, const Matrix& v, const Matrix& w) {
  require_same_shape(v, w, "spd::inner_natural");
  require_same_shape(a, v, "spd::inner_natural");
  Eigen::LLT<Matrix> llt(symmetric_part(a));
  if (llt.info() != Eigen::Success)
    fail(ErrorCode::NotPositiveDefinite,
         "spd::inner_natural: base point is not positive definite");
  const Matrix av = llt.solve(v);
  const Matrix aw = llt.solve(w);
  return (av * aw).trace();
}

Matrix exp(const Matrix& a, const Matrix& delta, double sym_tol) {
  require_same_shape(a, delta, "spd::exp");
  if ((delta - delta.transpose()).norm() >
      sym_tol * std::max(1.0, delta.norm()))
    fail(ErrorCode::NotSymmetric, "spd::exp: tangent vector not symmetric");
  const SqrtPair s = sqrt_pair(a, "spd::exp");
  const Matrix inner = symmetric_part(s.inv_half * delta * s.inv_half);
  const Matrix e = exp_sym(inner, /*sym_tol=*/1.0);
  return symmetric_part(s.half * e * s.half);
}

Matrix log(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "spd::log");
  if ((b - b.transpose()).norm() > tol::membership * std::max(1.0, b.norm()))
    fail(ErrorCode::NotSymmetric, "spd::log: target not symmetric");
  const SqrtPair s = sqrt_pair(a, "spd::log");
  const Matrix inner = symmetric_part(s.inv_half * b * s.inv_half);
  const Matrix l = log_spd(inner); // rejects indefinite b via the sandwich
  return symmetric_part(s.half * l * s.half);
}

double dist(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "spd::dist");
  if ((b - b.transpose()).norm() > tol::membership * std::max(1.0, b.norm()))
    fail(ErrorCode::NotSymmetric, "spd::dist: target not symmetric");
  const SqrtPair s = sqrt_pair(a, "spd::dist");
  const Matrix inner = symmetric_part(s.inv_half * b * s.inv_half);
  return log_spd(inner).norm();
}

double dist_log_euclidean(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "spd::dist_log_euclidean");
  return (log_spd(a) - log_spd(b)).norm();
}

} // namespace manifoldkit::spd

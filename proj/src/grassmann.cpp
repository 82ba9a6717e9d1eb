#include "manifoldkit/grassmann.hpp"

#include "manifoldkit/kernels.hpp"

#include <Eigen/LU>

#include <cmath>

namespace manifoldkit::grassmann {

double membership_residual(const Matrix& u) {
  if (u.cols() > u.rows() || !u.allFinite())
    return std::numeric_limits<double>::infinity();
  return (u.transpose() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

double tangency_residual(const Matrix& u, const Matrix& delta) {
  return (u.transpose() * delta).norm();
}

Matrix project_tangent(const Matrix& u, const Matrix& ambient) {
  require_same_shape(u, ambient, "grassmann::project_tangent");
  return ambient - u * (u.transpose() * ambient);
}

double inner(const Matrix& v, const Matrix& w) {
  require_same_shape(v, w, "grassmann::inner");
  return (v.transpose() * w).trace();
}

Matrix exp(const Matrix& u, const Matrix& delta, double horizontal_tol) {
  require_same_shape(u, delta, "grassmann::exp");
  const double residual = tangency_residual(u, delta);
  if (residual > horizontal_tol * std::max(1.0, delta.norm()))
    fail(ErrorCode::NotHorizontal,
         "grassmann::exp: u^T delta != 0 (residual " +
             std::to_string(residual) + "); tangents must be horizontal");
  const ThinSVD svd = thin_svd(delta);
  const Vector cos_s = svd.s.array().cos();
  const Vector sin_s = svd.s.array().sin();
  return u * (svd.v * cos_s.asDiagonal() * svd.v.transpose()) +
         svd.u * sin_s.asDiagonal() * svd.v.transpose();
}

Matrix log(const Matrix& u, const Matrix& u2) {
  require_same_shape(u, u2, "grassmann::log");
  const Matrix m = u.transpose() * u2;
  const ThinSVD msvd = thin_svd(m);
  const double smin = msvd.s(msvd.s.size() - 1);
  if (smin < 1e-8)
    fail(ErrorCode::RankDeficientOverlap,
         "grassmann::log: u^T u2 is near-singular (sigma_min = " +
             std::to_string(smin) +
             ", a principal angle is near pi/2); use log_modified");
  // L = u2 M^{-1} - u through a solve
  const Matrix l =
      m.transpose().partialPivLu().solve(u2.transpose()).transpose() - u;
  const ThinSVD svd = thin_svd(l);
  const Vector atan_s = svd.s.array().atan();
  return svd.u * atan_s.asDiagonal() * svd.v.transpose();
}

Matrix log_modified(const Matrix& u, const Matrix& u2) {
  require_same_shape(u, u2, "grassmann::log_modified");
  const ThinSVD align = thin_svd(u2.transpose() * u);
  const Matrix u2_star = u2 * (align.u * align.v.transpose());
  const Matrix l = u2_star - u * (u.transpose() * u2_star);
  const ThinSVD svd = thin_svd(l);
  Vector asin_s(svd.s.size());
  for (Eigen::Index i = 0; i < svd.s.size(); ++i)
    asin_s(i) = std::asin(clip_unit(svd.s(i)));
  return svd.u * asin_s.asDiagonal() * svd.v.transpose();
}

Vector principal_angles(const Matrix& u, const Matrix& u2) {
  require_same_shape(u, u2, "grassmann::principal_angles");
  const Matrix m = u.transpose() * u2;
  const Eigen::Index p = m.cols();
  // cos(theta_k) from u^T u2, sin(theta_k) from the projected residual;
  // combining both through atan2 keeps the angles accurate at 0 and pi/2,
  // where either one alone is ill-conditioned
  const ThinSVD cos_svd = thin_svd(m);
  const ThinSVD sin_svd = thin_svd(Matrix(u2 - u * m));
  Vector theta(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double c = clip_unit(cos_svd.s(i));          // descending
    const double s = clip_unit(sin_svd.s(p - 1 - i));  // ascending
    theta(i) = std::atan2(s, c);
  }
  return theta;
}

double dist(const Matrix& u, const Matrix& u2) {
  return principal_angles(u, u2).norm();
}

} // namespace manifoldkit::grassmann

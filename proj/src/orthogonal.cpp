#include "manifoldkit/orthogonal.hpp"

#include "manifoldkit/kernels.hpp"

#include <cmath>

namespace manifoldkit::ortho {

double membership_residual(const Matrix& q) {
  if (q.rows() != q.cols())
    return std::numeric_limits<double>::infinity();
  return (q.transpose() * q - Matrix::Identity(q.cols(), q.cols())).norm();
}

double tangency_residual(const Matrix& q, const Matrix& delta) {
  const Matrix m = q.transpose() * delta;
  return (m + m.transpose()).norm();
}

int component(const Matrix& q) { return q.determinant() < 0.0 ? -1 : 1; }

Matrix exp(const Matrix& q, const Matrix& delta, double tangent_tol) {
  require_same_shape(q, delta, "ortho::exp");
  const double residual = tangency_residual(q, delta);
  if (residual > tangent_tol * std::max(1.0, delta.norm()))
    fail(ErrorCode::NotTangent,
         "ortho::exp: q^T delta is not skew (residual " +
             std::to_string(residual) + ")");
  const Matrix w = skew_part(q.transpose() * delta);
  return q * SkewSchur(w).exp(1.0);
}

Matrix log(const Matrix& q, const Matrix& q2) {
  require_same_shape(q, q2, "ortho::log");
  if (component(q) != component(q2))
    fail(ErrorCode::ComponentMismatch,
         "ortho::log: points lie in different components of O(n)");
  OrthogonalAngles angles(q.transpose() * q2);
  if (angles.has_antipodal())
    fail(ErrorCode::AntipodalSpectrum,
         "ortho::log: q^T q2 has an eigenvalue at or near -1; the geodesic "
         "is not unique");
  return q * angles.log();
}

double dist(const Matrix& q, const Matrix& q2) {
  require_same_shape(q, q2, "ortho::dist");
  if (component(q) != component(q2))
    fail(ErrorCode::ComponentMismatch,
         "ortho::dist: points lie in different components of O(n)");
  OrthogonalAngles angles(q.transpose() * q2);
  double sum = 0.0;
  for (double theta : angles.eigen_angles())
    sum += theta * theta;
  return std::sqrt(sum);
}

} // namespace manifoldkit::ortho

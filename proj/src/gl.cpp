#include "manifoldkit/gl.hpp"

#include "manifoldkit/kernels.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>

namespace manifoldkit::gl {

namespace {

// a^{-1} x through an LU solve; explicit inverses are avoided throughout.
Matrix solve_left(const Matrix& a, const Matrix& x, double floor,
                  const char* who) {
  if (!is_invertible(a, floor))
    fail(ErrorCode::SingularBase,
         std::string(who) + ": base matrix is singular to working precision");
  return a.partialPivLu().solve(x);
}

} // namespace

double inverse_condition(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0)
    return 0.0;
  return s(s.size() - 1) / s(0);
}

bool is_invertible(const Matrix& a, double floor) {
  if (a.rows() != a.cols())
    return false;
  return inverse_condition(a) >= floor;
}

Matrix exp_flat(const Matrix& a, const Matrix& delta, double floor) {
  require_same_shape(a, delta, "gl::exp_flat");
  Matrix b = a + delta;
  if (!is_invertible(b, floor))
    fail(ErrorCode::LeftManifold,
         "gl::exp_flat: straight line endpoint is singular "
         "(inverse condition " +
             std::to_string(inverse_condition(b)) + ")");
  return b;
}

FlatLog log_flat(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "gl::log_flat");
  FlatLog out;
  out.delta = b - a;
  const double da = a.determinant();
  const double db = b.determinant();
  out.leaves_component = (da < 0.0) != (db < 0.0);
  return out;
}

double inner_left_invariant(const Matrix& a, const Matrix& v,
                            const Matrix& w) {
  require_same_shape(v, w, "gl::inner_left_invariant");
  const Matrix av = solve_left(a, v, tol::singularity, "gl::inner");
  const Matrix aw = solve_left(a, w, tol::singularity, "gl::inner");
  return (av.transpose() * aw).trace();
}

Matrix geodesic_left_invariant(const Matrix& a, const Matrix& delta, double t,
                               double floor) {
  require_same_shape(a, delta, "gl::geodesic_left_invariant");
  const Matrix v = solve_left(a, delta, floor, "gl::geodesic_left_invariant");
  return a * exp_m(t * v.transpose()) * exp_m(t * (v - v.transpose()));
}

Matrix log_left_invariant_normal(const Matrix& a, const Matrix& b,
                                 double floor) {
  require_same_shape(a, b, "gl::log_left_invariant_normal");
  const Matrix c = solve_left(a, b, floor, "gl::log_left_invariant_normal");
  const double normality =
      (c * c.transpose() - c.transpose() * c).norm();
  const double scale = c.squaredNorm();
  if (normality > 1e-8 * std::max(scale, 1e-300))
    fail(ErrorCode::NotNormal,
         "gl::log_left_invariant_normal: a^{-1} b is not normal "
         "(residual " +
             std::to_string(normality) + ", threshold " +
             std::to_string(1e-8 * scale) +
             "); the general left-invariant logarithm has no closed form");
  return a * log_m(c);
}

double dist_flat(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "gl::dist_flat");
  return (b - a).norm();
}

} // namespace manifoldkit::gl

#include "manifoldkit/stiefel.hpp"

#include <cmath>
#include <sstream>

namespace manifoldkit::stiefel {

namespace {

void require_tangent(const Matrix& u, const Matrix& delta, double tangent_tol,
                     const char* who) {
  require_same_shape(u, delta, who);
  const double residual = tangency_residual(u, delta);
  if (residual > tangent_tol * std::max(1.0, delta.norm()))
    fail(ErrorCode::NotTangent,
         std::string(who) + ": u^T delta is not skew (residual " +
             std::to_string(residual) +
             "); project_tangent is available for repairs");
}

// Horizontal/vertical split shared by the exponential and the prepared
// geodesic: A = u^T delta (skew), QR = delta - u A, core = [[A, -R^T],[R, 0]].
struct ExpParts {
  Matrix a;
  Matrix q;
  Matrix core; // 2p x 2p, exactly skew
};

ExpParts exp_parts(const Matrix& u, const Matrix& delta) {
  const Eigen::Index p = u.cols();
  ExpParts parts;
  parts.a = skew_part(u.transpose() * delta);
  const ThinQR qr = thin_qr(delta - u * parts.a);
  parts.q = qr.q;
  Matrix core = Matrix::Zero(2 * p, 2 * p);
  core.topLeftCorner(p, p) = parts.a;
  core.topRightCorner(p, p) = -qr.r.transpose();
  core.bottomLeftCorner(p, p) = qr.r;
  parts.core = skew_part(core);
  return parts;
}

} // namespace

double membership_residual(const Matrix& u) {
  if (u.cols() > u.rows() || !u.allFinite())
    return std::numeric_limits<double>::infinity();
  return (u.transpose() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

double tangency_residual(const Matrix& u, const Matrix& delta) {
  const Matrix m = u.transpose() * delta;
  return (m + m.transpose()).norm();
}

Matrix project_tangent(const Matrix& u, const Matrix& ambient) {
  require_same_shape(u, ambient, "stiefel::project_tangent");
  const Matrix m = u.transpose() * ambient;
  return u * skew_part(m) + (ambient - u * m);
}

double inner(const Matrix& u, const Matrix& v, const Matrix& w,
             StMetric metric) {
  require_same_shape(v, w, "stiefel::inner");
  require_same_shape(u, v, "stiefel::inner");
  const double euclidean = (v.transpose() * w).trace();
  if (metric == StMetric::Euclidean)
    return euclidean;
  const Matrix uv = u.transpose() * v;
  const Matrix uw = u.transpose() * w;
  return euclidean - 0.5 * (uv.transpose() * uw).trace();
}

Matrix exp_canonical(const Matrix& u, const Matrix& delta,
                     double tangent_tol) {
  require_tangent(u, delta, tangent_tol, "stiefel::exp_canonical");
  const Eigen::Index p = u.cols();
  const ExpParts parts = exp_parts(u, delta);
  const Matrix mn =
      SkewSchur(parts.core).exp(1.0).leftCols(p); // [M; N], 2p x p
  return u * mn.topRows(p) + parts.q * mn.bottomRows(p);
}

Matrix exp_euclidean(const Matrix& u, const Matrix& delta,
                     double tangent_tol) {
  require_tangent(u, delta, tangent_tol, "stiefel::exp_euclidean");
  const Eigen::Index n = u.rows();
  const Eigen::Index p = u.cols();
  const Matrix a = skew_part(u.transpose() * delta);
  Matrix block(2 * p, 2 * p);
  block.topLeftCorner(p, p) = a;
  block.topRightCorner(p, p) = -delta.transpose() * delta;
  block.bottomLeftCorner(p, p) = Matrix::Identity(p, p);
  block.bottomRightCorner(p, p) = a;
  Matrix ud(n, 2 * p);
  ud.leftCols(p) = u;
  ud.rightCols(p) = delta;
  const Matrix inner = exp_m(block).leftCols(p);
  return ud * inner * SkewSchur(-a).exp(1.0);
}

PreparedGeodesic::PreparedGeodesic(const Matrix& u, const Matrix& delta,
                                   double tangent_tol)
    : u_(u) {
  require_tangent(u, delta, tangent_tol, "stiefel::PreparedGeodesic");
  ExpParts parts = exp_parts(u, delta);
  q_ = std::move(parts.q);
  core_ = SkewSchur(parts.core);
}

Matrix PreparedGeodesic::at(double t) const {
  const Eigen::Index p = u_.cols();
  const Matrix mn = core_.exp(t).leftCols(p);
  return u_ * mn.topRows(p) + q_ * mn.bottomRows(p);
}

LogReport log_canonical(const Matrix& u, const Matrix& u2,
                        const LogOptions& opts) {
  require_same_shape(u, u2, "stiefel::log_canonical");
  const Eigen::Index p = u.cols();

  const Matrix m = u.transpose() * u2;
  const ThinQR qr = thin_qr(u2 - u * m);
  Matrix block(2 * p, p);
  block.topRows(p) = m;
  block.bottomRows(p) = qr.r;
  // [M; N] is orthonormal because u2 is; a failure here means the inputs are
  // not Stiefel points.
  Matrix v = orthogonal_complete(block);

  LogReport report;
  Matrix a_k = Matrix::Zero(p, p);
  Matrix b_k = Matrix::Zero(p, p);
  for (int k = 0; k <= opts.max_iter; ++k) {
    Matrix l;
    try {
      l = OrthogonalAngles(v).log();
    } catch (const ManifoldError& err) {
      if (err.code() != ErrorCode::SpectrumOnBranchCut)
        throw;
      fail(ErrorCode::SpectrumOnBranchCut,
           "stiefel::log_canonical: log_m(V_k) undefined at iteration " +
               std::to_string(k) + "; the pair is outside the reliable "
                                   "domain of the algorithm");
    }
    a_k = l.topLeftCorner(p, p);
    b_k = l.bottomLeftCorner(p, p);
    const Matrix c_k = l.bottomRightCorner(p, p);
    const double residual = spectral_norm(c_k);
    report.residual_history.push_back(residual);
    report.final_residual = residual;
    report.iterations = k;
    if (residual <= opts.tau)
      break;
    if (k == opts.max_iter) {
      std::ostringstream os;
      os << "stiefel::log_canonical: no convergence after " << opts.max_iter
         << " iterations; residual history:";
      for (double r : report.residual_history)
        os << " " << r;
      fail(ErrorCode::NoConvergence, os.str());
    }
    const Matrix phi = SkewSchur(skew_part(-c_k)).exp(1.0);
    v.rightCols(p) = v.rightCols(p) * phi;
  }
  report.delta = u * a_k + qr.q * b_k;
  return report;
}

double dist_canonical(const Matrix& u, const Matrix& u2,
                      const LogOptions& opts) {
  const LogReport report = log_canonical(u, u2, opts);
  return std::sqrt(inner(u, report.delta, report.delta, StMetric::Canonical));
}

} // namespace manifoldkit::stiefel

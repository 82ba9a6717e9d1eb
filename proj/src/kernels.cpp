#include "manifoldkit/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace manifoldkit {

namespace {

using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

std::string format_complex(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag())
     << "i";
  return os.str();
}

// ---------------------------------------------------------------------------
// exp_m core: Higham's degree-13 Pade approximant with scaling and squaring.
// ---------------------------------------------------------------------------

Matrix exp_pade13(const Matrix& a) {
  static const double b[] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const Eigen::Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
           b[5] * a4 + b[3] * a2 + b[1] * id);
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                   b[4] * a4 + b[2] * a2 + b[0] * id;
  return (v - u).partialPivLu().solve(v + u);
}

Matrix exp_general(const Matrix& x) {
  // theta_13 from the double-precision backward-error analysis
  constexpr double theta13 = 5.371920351148152;
  const double norm1 = x.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  Matrix a = x;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    a /= std::ldexp(1.0, squarings);
  }
  Matrix r = exp_pade13(a);
  for (int i = 0; i < squarings; ++i)
    r = r * r;
  return r;
}

// ---------------------------------------------------------------------------
// log_m core: complex Schur form, repeated square roots of the triangular
// factor, Pade core evaluated in partial-fraction form at Gauss-Legendre
// nodes, then undo the scaling.
// ---------------------------------------------------------------------------

// Gauss-Legendre nodes/weights on [0, 1], computed once by Newton iteration
// on the Legendre polynomial.
void gauss_legendre01(int m, std::vector<double>& nodes,
                      std::vector<double>& weights) {
  nodes.assign(m, 0.0);
  weights.assign(m, 0.0);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = m * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15)
        break;
    }
    nodes[i] = 0.5 * (1.0 - x);
    nodes[m - 1 - i] = 0.5 * (1.0 + x);
    const double w = 1.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[m - 1 - i] = w;
  }
}

// Pade approximant of log(I + E) via sum_i w_i E (I + x_i E)^{-1}.
ComplexMatrix log_pade(const ComplexMatrix& e, int degree = 8) {
  std::vector<double> nodes, weights;
  gauss_legendre01(degree, nodes, weights);
  const Eigen::Index n = e.rows();
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  for (int i = 0; i < degree; ++i)
    acc += weights[i] *
           ((id + nodes[i] * e).partialPivLu().solve(e));
  return acc;
}

// Principal square root of an upper-triangular complex matrix
// (Bjorck-Hammarling recurrence).
ComplexMatrix sqrt_triangular(const ComplexMatrix& t) {
  const Eigen::Index n = t.rows();
  ComplexMatrix r = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    r(i, i) = std::sqrt(t(i, i));
  for (Eigen::Index j = 1; j < n; ++j) {
    for (Eigen::Index i = j - 1; i >= 0; --i) {
      Complex s = 0.0;
      for (Eigen::Index k = i + 1; k < j; ++k)
        s += r(i, k) * r(k, j);
      const Complex denom = r(i, i) + r(j, j);
      if (std::abs(denom) == 0.0)
        fail(ErrorCode::DecompositionFailed,
             "log_m: square-root recurrence broke down (repeated singular "
             "eigenvalue)");
      r(i, j) = (t(i, j) - s) / denom;
    }
  }
  return r;
}

Matrix log_general(const Matrix& x) {
  Eigen::ComplexSchur<Matrix> schur(x);
  if (schur.info() != Eigen::Success)
    fail(ErrorCode::DecompositionFailed, "log_m: Schur decomposition failed");
  ComplexMatrix t = schur.matrixT();
  const ComplexMatrix q = schur.matrixU();
  const Eigen::Index n = x.rows();

  const double scale = std::max(1.0, x.norm());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex lambda = t(i, i);
    if (lambda.real() <= 0.0 && std::abs(lambda.imag()) <= 1e-12 * scale)
      fail(ErrorCode::SpectrumOnBranchCut,
           "log_m: eigenvalue " + format_complex(lambda) +
               " lies on the closed negative real axis");
  }

  int roots = 0;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  while ((t - id).norm() > 0.3 && roots < 60) {
    t = sqrt_triangular(t);
    ++roots;
  }
  if ((t - id).norm() > 0.3)
    fail(ErrorCode::DecompositionFailed,
         "log_m: inverse scaling-and-squaring did not contract the spectrum");

  ComplexMatrix l = log_pade(t - id);
  l *= std::ldexp(1.0, roots);
  return (q * l * q.adjoint()).real();
}

bool is_orthogonal_matrix(const Matrix& x, double tol_abs = 1e-10) {
  if (x.rows() != x.cols())
    return false;
  const Eigen::Index n = x.rows();
  return (x.transpose() * x - Matrix::Identity(n, n)).norm() <=
         tol_abs * std::sqrt(static_cast<double>(n));
}

} // namespace

// ---------------------------------------------------------------------------
// SkewSchur
// ---------------------------------------------------------------------------

SkewSchur::SkewSchur(const Matrix& x, double detect_tol) : n_(x.rows()) {
  require_square(x, "SkewSchur");
  Eigen::RealSchur<Matrix> schur(x);
  if (schur.info() != Eigen::Success)
    fail(ErrorCode::DecompositionFailed, "SkewSchur: Schur failed");
  w_ = schur.matrixU();
  const Matrix& t = schur.matrixT();
  const double scale = std::max(1.0, x.norm());
  Eigen::Index i = 0;
  while (i < n_) {
    if (i + 1 < n_ && std::abs(t(i + 1, i)) > detect_tol * scale) {
      // average the two off-diagonal entries; T is skew up to roundoff
      const double theta = 0.5 * (t(i + 1, i) - t(i, i + 1));
      blocks_.emplace_back(static_cast<int>(i), theta);
      i += 2;
    } else {
      ++i;
    }
  }
}

Matrix SkewSchur::exp(double t) const {
  Matrix r = Matrix::Identity(n_, n_);
  for (const auto& [i, theta] : blocks_) {
    const double c = std::cos(t * theta);
    const double s = std::sin(t * theta);
    r(i, i) = c;
    r(i + 1, i + 1) = c;
    r(i, i + 1) = -s;
    r(i + 1, i) = s;
  }
  return w_ * r * w_.transpose();
}

// ---------------------------------------------------------------------------
// OrthogonalAngles
// ---------------------------------------------------------------------------

OrthogonalAngles::OrthogonalAngles(const Matrix& q) : n_(q.rows()) {
  require_square(q, "OrthogonalAngles");
  Eigen::RealSchur<Matrix> schur(q);
  if (schur.info() != Eigen::Success)
    fail(ErrorCode::DecompositionFailed, "OrthogonalAngles: Schur failed");
  w_ = schur.matrixU();
  const Matrix& t = schur.matrixT();
  Eigen::Index i = 0;
  while (i < n_) {
    if (i + 1 < n_ && std::abs(t(i + 1, i)) > 1e-12) {
      // 2x2 rotation block; symmetrize against roundoff
      const double c = 0.5 * (t(i, i) + t(i + 1, i + 1));
      const double s = 0.5 * (t(i + 1, i) - t(i, i + 1));
      blocks_.emplace_back(static_cast<int>(i), std::atan2(s, c));
      i += 2;
    } else {
      if (t(i, i) < 0.0)
        flips_.push_back(static_cast<int>(i));
      ++i;
    }
  }
}

std::vector<double> OrthogonalAngles::eigen_angles() const {
  std::vector<double> angles;
  angles.reserve(static_cast<size_t>(n_));
  for (const auto& [i, theta] : blocks_) {
    angles.push_back(theta);
    angles.push_back(-theta);
  }
  for (size_t k = 0; k < flips_.size(); ++k)
    angles.push_back(M_PI);
  while (angles.size() < static_cast<size_t>(n_))
    angles.push_back(0.0);
  return angles;
}

bool OrthogonalAngles::has_antipodal(double angle_tol) const {
  if (!flips_.empty())
    return true;
  for (const auto& [i, theta] : blocks_)
    if (std::abs(theta) > M_PI - angle_tol)
      return true;
  return false;
}

Matrix OrthogonalAngles::log(double angle_tol) const {
  if (has_antipodal(angle_tol))
    fail(ErrorCode::SpectrumOnBranchCut,
         "log of orthogonal matrix: eigenvalue at or near -1 "
         "(principal branch undefined)");
  Matrix s = Matrix::Zero(n_, n_);
  for (const auto& [i, theta] : blocks_) {
    s(i, i + 1) = -theta;
    s(i + 1, i) = theta;
  }
  const Matrix m = w_ * s * w_.transpose();
  return skew_part(m); // exact skewness
}

// ---------------------------------------------------------------------------
// exp_m / log_m with structured routing
// ---------------------------------------------------------------------------

Matrix exp_m(const Matrix& x) {
  require_square(x, "exp_m");
  require_finite(x, "exp_m");
  const double scale = x.norm();
  if (scale == 0.0)
    return Matrix::Identity(x.rows(), x.cols());
  if ((x - x.transpose()).norm() <= 1e-12 * scale) {
    const SymEig eig = sym_eig(symmetric_part(x), /*sym_tol=*/1.0);
    const Matrix r =
        eig.q * eig.lambda.array().exp().matrix().asDiagonal() *
        eig.q.transpose();
    return symmetric_part(r);
  }
  if ((x + x.transpose()).norm() <= 1e-12 * scale)
    return SkewSchur(skew_part(x)).exp(1.0);
  return exp_general(x);
}

Matrix log_m(const Matrix& x) {
  require_square(x, "log_m");
  require_finite(x, "log_m");
  const Eigen::Index n = x.rows();
  if (is_orthogonal_matrix(x)) {
    OrthogonalAngles angles(x);
    if (angles.has_antipodal())
      fail(ErrorCode::SpectrumOnBranchCut,
           "log_m: orthogonal input has an eigenvalue at or near -1");
    return angles.log();
  }
  if (is_symmetric(x)) {
    const SymEig eig = sym_eig(symmetric_part(x), /*sym_tol=*/1.0);
    const double lmax = eig.lambda(0);
    const double lmin = eig.lambda(eig.lambda.size() - 1);
    if (lmin > tol::definiteness * std::max(lmax, 1.0)) {
      const Matrix r =
          eig.q * eig.lambda.array().log().matrix().asDiagonal() *
          eig.q.transpose();
      return symmetric_part(r);
    }
    // symmetric but not positive definite: fall through for the eigenvalue
    // report from the general path
  }
  if (n == 0)
    return x;
  return log_general(x);
}

Matrix exp_sym(const Matrix& x, double sym_tol) {
  require_square(x, "exp_sym");
  require_finite(x, "exp_sym");
  if ((x - x.transpose()).norm() > sym_tol * std::max(1.0, x.norm()))
    fail(ErrorCode::NotSymmetric,
         "exp_sym: input asymmetry " +
             std::to_string((x - x.transpose()).norm()) + " above tolerance");
  const SymEig eig = sym_eig(symmetric_part(x), /*sym_tol=*/1.0);
  const Matrix r = eig.q * eig.lambda.array().exp().matrix().asDiagonal() *
                   eig.q.transpose();
  return symmetric_part(r);
}

Matrix log_spd(const Matrix& x, double spd_tol) {
  require_square(x, "log_spd");
  require_finite(x, "log_spd");
  if ((x - x.transpose()).norm() > spd_tol * std::max(1.0, x.norm()))
    fail(ErrorCode::NotSymmetric, "log_spd: input is not symmetric");
  const SymEig eig = sym_eig(symmetric_part(x), /*sym_tol=*/1.0);
  const double lmax = eig.lambda(0);
  const double lmin = eig.lambda(eig.lambda.size() - 1);
  if (lmin <= tol::definiteness * std::max(lmax, 0.0))
    fail(ErrorCode::NotPositiveDefinite,
         "log_spd: min eigenvalue " + std::to_string(lmin) +
             " fails the definiteness threshold");
  const Matrix r = eig.q * eig.lambda.array().log().matrix().asDiagonal() *
                   eig.q.transpose();
  return symmetric_part(r);
}

Matrix spd_sqrt(const Matrix& a, double spd_tol) {
  require_square(a, "spd_sqrt");
  require_finite(a, "spd_sqrt");
  if ((a - a.transpose()).norm() > spd_tol * std::max(1.0, a.norm()))
    fail(ErrorCode::NotSymmetric, "spd_sqrt: input is not symmetric");
  const SymEig eig = sym_eig(symmetric_part(a), /*sym_tol=*/1.0);
  const double lmax = eig.lambda(0);
  const double lmin = eig.lambda(eig.lambda.size() - 1);
  if (lmin <= tol::definiteness * std::max(lmax, 0.0))
    fail(ErrorCode::NotPositiveDefinite,
         "spd_sqrt: min eigenvalue " + std::to_string(lmin) +
             " fails the definiteness threshold");
  const Matrix r = eig.q * eig.lambda.array().sqrt().matrix().asDiagonal() *
                   eig.q.transpose();
  return symmetric_part(r);
}

PolarDecomposition polar_decompose(const Matrix& a, double cond_floor) {
  require_square(a, "polar_decompose");
  require_finite(a, "polar_decompose");
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (smin < cond_floor * smax || smax == 0.0)
    fail(ErrorCode::SingularInput,
         "polar_decompose: input singular (sigma_min/sigma_max = " +
             std::to_string(smax == 0.0 ? 0.0 : smin / smax) + ")");
  PolarDecomposition out;
  out.q = svd.matrixU() * svd.matrixV().transpose();
  out.p = symmetric_part(svd.matrixV() * s.asDiagonal() *
                         svd.matrixV().transpose());
  return out;
}

Matrix procrustes_rotation(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "procrustes_rotation");
  require_finite(a, "procrustes_rotation");
  require_finite(b, "procrustes_rotation");
  const Matrix m = b.transpose() * a;
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

ThinQR thin_qr(const Matrix& x) {
  require_finite(x, "thin_qr");
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (p > n)
    fail(ErrorCode::DimensionMismatch, "thin_qr: more columns than rows");
  Eigen::HouseholderQR<Matrix> qr(x);
  ThinQR out;
  out.q = qr.householderQ() * Matrix::Identity(n, p);
  out.r = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  // sign convention: nonnegative diagonal of R
  for (Eigen::Index j = 0; j < p; ++j) {
    if (out.r(j, j) < 0.0) {
      out.r.row(j) = -out.r.row(j);
      out.q.col(j) = -out.q.col(j);
    }
  }
  return out;
}

ThinSVD thin_svd(const Matrix& x) {
  require_finite(x, "thin_svd");
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    fail(ErrorCode::DecompositionFailed, "thin_svd: SVD did not converge");
  ThinSVD out;
  out.u = svd.matrixU();
  out.s = svd.singularValues();
  out.v = svd.matrixV();
  return out;
}

SymEig sym_eig(const Matrix& x, double sym_tol) {
  require_square(x, "sym_eig");
  require_finite(x, "sym_eig");
  if ((x - x.transpose()).norm() > sym_tol * std::max(1.0, x.norm()))
    fail(ErrorCode::NotSymmetric, "sym_eig: input is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric_part(x));
  if (es.info() != Eigen::Success)
    fail(ErrorCode::DecompositionFailed, "sym_eig: eigensolver failed");
  SymEig out;
  // Eigen sorts ascending; flip to descending
  out.lambda = es.eigenvalues().reverse();
  out.q = es.eigenvectors().rowwise().reverse();
  return out;
}

Matrix orthogonal_complete(const Matrix& block, double ortho_tol) {
  require_finite(block, "orthogonal_complete");
  const Eigen::Index rows = block.rows();
  const Eigen::Index p = block.cols();
  if (rows < p)
    fail(ErrorCode::DimensionMismatch,
         "orthogonal_complete: block has more columns than rows");
  const double residual =
      (block.transpose() * block - Matrix::Identity(p, p)).norm();
  if (residual > ortho_tol)
    fail(ErrorCode::NotOrthonormal,
         "orthogonal_complete: block orthonormality residual " +
             std::to_string(residual));
  Eigen::HouseholderQR<Matrix> qr(block);
  Matrix q = qr.householderQ();
  // First p columns agree with the block up to column signs; keep the caller's
  // block verbatim and take the remaining columns as the completion.
  Matrix out(rows, rows);
  out.leftCols(p) = block;
  out.rightCols(rows - p) = q.rightCols(rows - p);
  return out;
}

double min_eigenvalue_sym(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric_part(a),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_symmetric(const Matrix& x, double rel_tol) {
  if (x.rows() != x.cols())
    return false;
  return (x - x.transpose()).norm() <= rel_tol * std::max(1.0, x.norm());
}

bool is_skew(const Matrix& x, double rel_tol) {
  if (x.rows() != x.cols())
    return false;
  return (x + x.transpose()).norm() <= rel_tol * std::max(1.0, x.norm());
}

double spectral_norm(const Matrix& x) {
  if (x.size() == 0)
    return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues()(0);
}

} // namespace manifoldkit

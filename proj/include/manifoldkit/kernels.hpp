#pragma once

// Dense-matrix primitives shared by all manifold modules: matrix
// exponential/logarithm, SPD square root, polar decomposition, thin QR/SVD,
// symmetric eigendecomposition, Procrustes alignment, orthogonal completion.

#include "manifoldkit/types.hpp"

#include <vector>

namespace manifoldkit {

struct ThinQR {
  Matrix q; // n x p, orthonormal columns
  Matrix r; // p x p, upper triangular, nonnegative diagonal
};

struct ThinSVD {
  Matrix u; // rows x r
  Vector s; // r, nonnegative, descending
  Matrix v; // cols x r
};

struct SymEig {
  Matrix q;      // orthogonal
  Vector lambda; // descending
};

// Structured decomposition of a skew-symmetric matrix X = W S W^T with W
// orthogonal and S block diagonal (2x2 rotation generators, zeros elsewhere).
// exp(t) assembles W exp(tS) W^T from exact cos/sin blocks, so the result is
// orthogonal to working accuracy for every t.
class SkewSchur {
public:
  SkewSchur() : n_(0) {}
  explicit SkewSchur(const Matrix& x, double detect_tol = 1e-12);

  Matrix exp(double t = 1.0) const;

  const Matrix& basis() const { return w_; }
  const std::vector<std::pair<int, double>>& rotations() const {
    return blocks_;
  }

private:
  Matrix w_;
  std::vector<std::pair<int, double>> blocks_; // (start index, angle)
  Eigen::Index n_;
};

// Eigen-angle structure of an orthogonal matrix: Q = W T W^T with T block
// diagonal (2x2 rotations by theta_k, 1x1 entries +-1). Used for the
// logarithm of orthogonal matrices and the O(n) distance.
class OrthogonalAngles {
public:
  explicit OrthogonalAngles(const Matrix& q);

  // Angles of all n eigenvalues e^{i theta}; 2x2 blocks contribute +-theta,
  // 1x1 blocks contribute 0 or pi.
  std::vector<double> eigen_angles() const;

  bool has_antipodal(double angle_tol = 1e-6) const;

  // Principal logarithm; exactly skew-symmetric. Throws SpectrumOnBranchCut
  // when an eigenvalue sits within angle_tol of -1.
  Matrix log(double angle_tol = 1e-6) const;

private:
  Matrix w_;
  std::vector<std::pair<int, double>> blocks_; // (start index, angle), 2x2
  std::vector<int> flips_;                     // indices of -1 entries
  Eigen::Index n_;
};

// Matrix exponential: scaling-and-squaring with a degree-13 Pade core.
// Symmetric and skew inputs (relative asymmetry <= 1e-12) are routed through
// eigendecomposition paths so the output is exactly symmetric / orthogonal.
Matrix exp_m(const Matrix& x);

// Principal matrix logarithm: inverse scaling-and-squaring (repeated square
// roots of the triangular Schur factor, then a Pade core). Orthogonal inputs
// take the planar-rotation path and return an exactly skew result; SPD inputs
// take the symmetric eigendecomposition path. Throws SpectrumOnBranchCut when
// an eigenvalue lies on (-inf, 0].
Matrix log_m(const Matrix& x);

// Scalar-eigenvalue maps between sym(n) and SPD(n).
Matrix exp_sym(const Matrix& x, double sym_tol = tol::membership);
Matrix log_spd(const Matrix& x, double spd_tol = tol::membership);

Matrix spd_sqrt(const Matrix& a, double spd_tol = tol::membership);

struct PolarDecomposition {
  Matrix q; // orthogonal
  Matrix p; // symmetric positive definite
};
PolarDecomposition polar_decompose(const Matrix& a,
                                   double cond_floor = tol::singularity);

// Minimizer of ||a - b R||_F over orthogonal R (p x p).
Matrix procrustes_rotation(const Matrix& a, const Matrix& b);

ThinQR thin_qr(const Matrix& x);
ThinSVD thin_svd(const Matrix& x);
SymEig sym_eig(const Matrix& x, double sym_tol = tol::membership);

// Extends an orthonormal 2p x p block to a full orthogonal 2p x 2p matrix
// whose first p columns are the block itself.
Matrix orthogonal_complete(const Matrix& block,
                           double ortho_tol = tol::membership);

// Diagnostics used by membership checks.
double min_eigenvalue_sym(const Matrix& a);
bool is_symmetric(const Matrix& x, double rel_tol = 1e-12);
bool is_skew(const Matrix& x, double rel_tol = 1e-12);

// Spectral norm via SVD; intended for small matrices.
double spectral_norm(const Matrix& x);

// clamp to [-1, 1] before arcsin / arccos to absorb roundoff
inline double clip_unit(double x) {
  return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x);
}

} // namespace manifoldkit

#pragma once

// SPD(n) with the natural (affine-invariant) metric. The log-Euclidean
// distance is exposed as a secondary measure; its exp/log maps are not.

#include "manifoldkit/types.hpp"

namespace manifoldkit::spd {

// max(asymmetry, definiteness shortfall); 0 for a valid point
double membership_residual(const Matrix& a);
double tangency_residual(const Matrix& delta);

double inner_natural(const Matrix& a, const Matrix& v, const Matrix& w);

Matrix exp(const Matrix& a, const Matrix& delta,
           double sym_tol = tol::tangency);
Matrix log(const Matrix& a, const Matrix& b);

double dist(const Matrix& a, const Matrix& b);
double dist_log_euclidean(const Matrix& a, const Matrix& b);

} // namespace manifoldkit::spd

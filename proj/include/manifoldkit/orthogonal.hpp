#pragma once

// O(n) with the bi-invariant metric: exponential, logarithm, distance via
// eigenvalue angles. SO(n) is not a separate type; the determinant sign acts
// as the component label.

#include "manifoldkit/types.hpp"

namespace manifoldkit::ortho {

double membership_residual(const Matrix& q);
double tangency_residual(const Matrix& q, const Matrix& delta);

// +1 or -1
int component(const Matrix& q);

Matrix exp(const Matrix& q, const Matrix& delta,
           double tangent_tol = tol::tangency);

// Requires q^T q2 free of eigenvalues near -1 and both points in the same
// component. Returned delta satisfies q^T delta skew (exactly).
Matrix log(const Matrix& q, const Matrix& q2);

// sqrt(sum theta_k^2) over the eigen-angles of q^T q2.
double dist(const Matrix& q, const Matrix& q2);

} // namespace manifoldkit::ortho

#pragma once

// Gr(n,p) carried through Stiefel representatives. Equality of points is
// subspace equality; operations never alter the caller's representative.

#include "manifoldkit/types.hpp"

namespace manifoldkit::grassmann {

double membership_residual(const Matrix& u);
// ||u^T delta|| for the horizontal lift
double tangency_residual(const Matrix& u, const Matrix& delta);

Matrix project_tangent(const Matrix& u, const Matrix& ambient);

double inner(const Matrix& v, const Matrix& w);

Matrix exp(const Matrix& u, const Matrix& delta,
           double horizontal_tol = tol::tangency);

// Direct logarithm (requires u^T u2 invertible, i.e. no principal angle at
// pi/2). Raises RankDeficientOverlap near that cut.
Matrix log(const Matrix& u, const Matrix& u2);

// Procrustes-aligned logarithm; defined for every pair, and exp recovers the
// aligned representative at matrix level, not only the subspace. Default log
// used by the dispatch layer.
Matrix log_modified(const Matrix& u, const Matrix& u2);

// Ascending, in [0, pi/2].
Vector principal_angles(const Matrix& u, const Matrix& u2);

double dist(const Matrix& u, const Matrix& u2);

} // namespace manifoldkit::grassmann

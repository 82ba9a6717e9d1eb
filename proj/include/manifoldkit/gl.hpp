#pragma once

// GL(n): flat (Euclidean) geometry with straight-line exp/log, and the
// left-invariant geometry with a closed-form geodesic. The left-invariant
// logarithm is available only when a^{-1} b is normal.

#include "manifoldkit/types.hpp"

namespace manifoldkit::gl {

// sigma_min / sigma_max; 0 for a zero matrix
double inverse_condition(const Matrix& a);

bool is_invertible(const Matrix& a, double floor = tol::singularity);

Matrix exp_flat(const Matrix& a, const Matrix& delta,
                double floor = tol::singularity);

struct FlatLog {
  Matrix delta;
  bool leaves_component = false; // det(a) and det(b) differ in sign
};
FlatLog log_flat(const Matrix& a, const Matrix& b);

double inner_left_invariant(const Matrix& a, const Matrix& v, const Matrix& w);

Matrix geodesic_left_invariant(const Matrix& a, const Matrix& delta, double t,
                               double floor = tol::singularity);

// Requires a^{-1} b normal; delta = a log_m(a^{-1} b).
Matrix log_left_invariant_normal(const Matrix& a, const Matrix& b,
                                 double floor = tol::singularity);

double dist_flat(const Matrix& a, const Matrix& b);

} // namespace manifoldkit::gl

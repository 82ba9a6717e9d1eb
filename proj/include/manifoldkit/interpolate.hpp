#pragma once

// Manifold-valued interpolation and extrapolation: tangent-space
// interpolation in normal coordinates, piecewise-geodesic interpolation,
// weighted Riemannian centers, geodesic extrapolation and the SVD-derivative
// machinery behind basis extrapolation.

#include "manifoldkit/manifold.hpp"
#include "manifoldkit/weights.hpp"

#include <optional>
#include <vector>

namespace manifoldkit {

struct SampleSet {
  std::vector<Vector> params;
  std::vector<ManifoldPoint> points;

  // nonempty, one manifold, identical shapes, pairwise-distinct params
  void validate() const;
  ManifoldId manifold() const { return points.front().manifold; }
  int size() const { return static_cast<int>(points.size()); }
};

enum class BasePointPolicy { Index, Medoid };

struct InterpOptions {
  std::optional<Metric> metric;
  BasePointPolicy base_policy = BasePointPolicy::Index;
  int base_index = 0;
};

// The sample index the tangent-space interpolation will expand around.
int resolve_base_index(const SampleSet& samples, const InterpOptions& opts);

// Tangent-space interpolation: map all samples into T_{p_base} M, combine
// with scheme weights, map back. Nodal-exact up to the exp/log round trip.
ManifoldPoint interp_normal_coords(const SampleSet& samples,
                                   const Vector& mu_star,
                                   const WeightScheme& scheme,
                                   const InterpOptions& opts = {});

// Piecewise-geodesic interpolation of a 1-d sampled trajectory
// (base-point independent). segment_out, when given, receives the index of
// the segment's left endpoint.
ManifoldPoint interp_geodesic(const SampleSet& samples, double mu_star,
                              const InterpOptions& opts = {},
                              int* segment_out = nullptr);

struct KarcherOptions {
  std::optional<Metric> metric;
  double tau = 1e-9;
  int max_iter = 100;
  double initial_step = 1.0;
  int max_halvings = 30;
  std::optional<ManifoldPoint> initial_guess; // default: largest-weight node
};

struct KarcherReport {
  int iterations = 0;
  double final_gradient_norm = 0.0;
  std::vector<double> gradient_norm_history;
};

// Weighted Riemannian center: gradient descent on
// f(q) = 1/2 sum_i phi_i(mu*) dist(q, p_i)^2 with backtracking line search.
ManifoldPoint karcher_interpolate(const SampleSet& samples,
                                  const Vector& mu_star,
                                  const WeightScheme& scheme,
                                  const KarcherOptions& opts = {},
                                  KarcherReport* report = nullptr);

// First-order geodesic extrapolation from (p0, v0).
ManifoldPoint extrapolate_geodesic(const ManifoldPoint& p0,
                                   const TangentVector& v0, double mu_star,
                                   std::optional<Metric> metric = std::nullopt);

struct SvdDerivative {
  Vector sigma_dot;
  Matrix z_dot;
  Matrix u_dot;
};

// Derivatives of the thin SVD factors of a matrix path s(mu) at mu0, given
// s = s(mu0) and s_dot = ds/dmu(mu0). Requires mutually distinct, nonzero
// singular values.
SvdDerivative svd_derivative(const Matrix& s, const Matrix& s_dot,
                             double gap_tol = 1e-8);

struct PodExtrapolation {
  Matrix basis;                    // n x r, orthonormal
  double tangency_repair = 0.0;    // magnitude removed by the projection
};

// Truncate the SVD of the snapshot path to rank r and move the basis along
// the Stiefel geodesic with velocity U_dot. Stays orthonormal for every
// mu_star, unlike the truncated Taylor line.
PodExtrapolation extrapolate_pod_basis(const Matrix& snapshots,
                                       const Matrix& snapshots_dot, int rank,
                                       double mu_star, double gap_tol = 1e-8);

} // namespace manifoldkit

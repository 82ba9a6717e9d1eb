#pragma once

// St(n,p) with the canonical and Euclidean metrics: tangent projection,
// inner products, both exponentials, the iterative canonical logarithm and
// the geodesic distance derived from it.

#include "manifoldkit/kernels.hpp"
#include "manifoldkit/types.hpp"

#include <vector>

namespace manifoldkit::stiefel {

enum class StMetric { Canonical, Euclidean };

double membership_residual(const Matrix& u);
double tangency_residual(const Matrix& u, const Matrix& delta);

Matrix project_tangent(const Matrix& u, const Matrix& ambient);

double inner(const Matrix& u, const Matrix& v, const Matrix& w,
             StMetric metric = StMetric::Canonical);

Matrix exp_canonical(const Matrix& u, const Matrix& delta,
                     double tangent_tol = tol::tangency);

Matrix exp_euclidean(const Matrix& u, const Matrix& delta,
                     double tangent_tol = tol::tangency);

// Canonical geodesic with the base-dependent part precomputed; evaluating at
// a parameter value costs O(n p^2). Immutable after construction.
class PreparedGeodesic {
public:
  PreparedGeodesic(const Matrix& u, const Matrix& delta,
                   double tangent_tol = tol::tangency);

  Matrix at(double t) const;

private:
  Matrix u_;
  Matrix q_;
  SkewSchur core_;
};

struct LogOptions {
  double tau = 1e-11;
  int max_iter = 100;
};

struct LogReport {
  Matrix delta;
  int iterations = 0;
  double final_residual = 0.0;
  std::vector<double> residual_history; // ||C_k||_2 per iteration
};

// Iterative canonical logarithm. Convergence is guaranteed for
// ||u - u2||_2 <= 0.09; outside that range the report/error carries the
// residual history.
LogReport log_canonical(const Matrix& u, const Matrix& u2,
                        const LogOptions& opts = {});

double dist_canonical(const Matrix& u, const Matrix& u2,
                      const LogOptions& opts = {});

} // namespace manifoldkit::stiefel

#pragma once

// Uniform manifold contract the interpolation engine programs against:
// validated points and tangents, metric inner product, exp, log, dist,
// geodesic evaluation, tangent projection, residual diagnostics.

#include "manifoldkit/types.hpp"

#include <optional>
#include <string>

namespace manifoldkit {

enum class ManifoldId { GL, On, SPD, St, Gr };

enum class Metric { Euclidean, Canonical, Natural, LeftInvariant };

std::string to_string(ManifoldId id);
std::string to_string(Metric metric);
std::optional<ManifoldId> parse_manifold(const std::string& name);
std::optional<Metric> parse_metric(const std::string& name);

// St -> canonical, GL -> euclidean, SPD -> natural, On/Gr -> canonical
Metric default_metric(ManifoldId id);
bool metric_supported(ManifoldId id, Metric metric);

struct ManifoldPoint {
  ManifoldId manifold;
  Matrix rep;
};

struct TangentVector {
  ManifoldPoint base;
  Matrix rep;
};

// Residual magnitudes of the membership/tangency predicates; for test
// harnesses and file validation.
double check_point(ManifoldId id, const Matrix& rep);
double check_tangent(ManifoldId id, const Matrix& base, const Matrix& rep);

inline double check_point(const ManifoldPoint& p) {
  return check_point(p.manifold, p.rep);
}
inline double check_tangent(const ManifoldPoint& p, const TangentVector& v) {
  return check_tangent(p.manifold, p.rep, v.rep);
}

// Validating constructors; throw on membership/tangency failure.
ManifoldPoint make_point(ManifoldId id, const Matrix& rep,
                         double membership_tol = tol::membership);
TangentVector make_tangent(const ManifoldPoint& base, const Matrix& rep,
                           double tangency_tol = tol::tangency);

// log/dist raise manifold-specific errors when the target leaves the
// injectivity domain of the exponential: AntipodalSpectrum on O(n),
// SpectrumOnBranchCut and NoConvergence on St(n,p), RankDeficientOverlap on
// Gr(n,p), NotNormal for the left-invariant GL log. This predicate groups
// them for callers that only care about the class.
inline bool out_of_injectivity_domain(ErrorCode code) {
  switch (code) {
  case ErrorCode::OutOfInjectivityDomain:
  case ErrorCode::AntipodalSpectrum:
  case ErrorCode::SpectrumOnBranchCut:
  case ErrorCode::NoConvergence:
  case ErrorCode::RankDeficientOverlap:
  case ErrorCode::NotNormal:
    return true;
  default:
    return false;
  }
}

double inner(const TangentVector& v, const TangentVector& w,
             std::optional<Metric> metric = std::nullopt);

ManifoldPoint exp(const ManifoldPoint& p, const TangentVector& v,
                  std::optional<Metric> metric = std::nullopt);

TangentVector log(const ManifoldPoint& p, const ManifoldPoint& q,
                  std::optional<Metric> metric = std::nullopt);

double dist(const ManifoldPoint& p, const ManifoldPoint& q,
            std::optional<Metric> metric = std::nullopt);

ManifoldPoint geodesic(const ManifoldPoint& p, const TangentVector& v,
                       double t, std::optional<Metric> metric = std::nullopt);

TangentVector project_tangent(const ManifoldPoint& p, const Matrix& ambient);

} // namespace manifoldkit

#include "manifoldkit/manifold.hpp"

#include "manifoldkit/gl.hpp"
#include "manifoldkit/grassmann.hpp"
#include "manifoldkit/kernels.hpp"
#include "manifoldkit/orthogonal.hpp"
#include "manifoldkit/spd.hpp"
#include "manifoldkit/stiefel.hpp"

#include <cmath>

namespace manifoldkit {

namespace {

Metric resolve_metric(ManifoldId id, std::optional<Metric> metric,
                      const char* who) {
  const Metric m = metric.value_or(default_metric(id));
  if (!metric_supported(id, m))
    fail(ErrorCode::UnsupportedMetric,
         std::string(who) + ": metric '" + to_string(m) +
             "' is not defined on " + to_string(id));
  return m;
}

void require_same_base(const TangentVector& v, const TangentVector& w,
                       const char* who) {
  if (v.base.manifold != w.base.manifold ||
      v.base.rep.rows() != w.base.rep.rows() ||
      v.base.rep.cols() != w.base.rep.cols() ||
      (v.base.rep - w.base.rep).norm() != 0.0)
    fail(ErrorCode::BaseMismatch,
         std::string(who) + ": tangent vectors have different base points");
}

void require_same_manifold(const ManifoldPoint& p, const ManifoldPoint& q,
                           const char* who) {
  if (p.manifold != q.manifold)
    fail(ErrorCode::DimensionMismatch,
         std::string(who) + ": points live on different manifolds (" +
             to_string(p.manifold) + " vs " + to_string(q.manifold) + ")");
  require_same_shape(p.rep, q.rep, who);
}

} // namespace

std::string to_string(ManifoldId id) {
  switch (id) {
  case ManifoldId::GL: return "GL";
  case ManifoldId::On: return "On";
  case ManifoldId::SPD: return "SPD";
  case ManifoldId::St: return "St";
  case ManifoldId::Gr: return "Gr";
  }
  return "?";
}

std::string to_string(Metric metric) {
  switch (metric) {
  case Metric::Euclidean: return "euclidean";
  case Metric::Canonical: return "canonical";
  case Metric::Natural: return "natural";
  case Metric::LeftInvariant: return "left_invariant";
  }
  return "?";
}

std::optional<ManifoldId> parse_manifold(const std::string& name) {
  if (name == "GL") return ManifoldId::GL;
  if (name == "On") return ManifoldId::On;
  if (name == "SPD") return ManifoldId::SPD;
  if (name == "St") return ManifoldId::St;
  if (name == "Gr") return ManifoldId::Gr;
  return std::nullopt;
}

std::optional<Metric> parse_metric(const std::string& name) {
  if (name == "euclidean") return Metric::Euclidean;
  if (name == "canonical") return Metric::Canonical;
  if (name == "natural") return Metric::Natural;
  if (name == "left_invariant") return Metric::LeftInvariant;
  return std::nullopt;
}

Metric default_metric(ManifoldId id) {
  switch (id) {
  case ManifoldId::GL: return Metric::Euclidean;
  case ManifoldId::SPD: return Metric::Natural;
  case ManifoldId::On:
  case ManifoldId::St:
  case ManifoldId::Gr: return Metric::Canonical;
  }
  return Metric::Euclidean;
}

bool metric_supported(ManifoldId id, Metric metric) {
  switch (id) {
  case ManifoldId::GL:
    return metric == Metric::Euclidean || metric == Metric::LeftInvariant;
  case ManifoldId::On:
    // the bi-invariant metric; euclidean and canonical coincide on O(n)
    return metric == Metric::Canonical || metric == Metric::Euclidean;
  case ManifoldId::SPD:
    return metric == Metric::Natural;
  case ManifoldId::St:
    return metric == Metric::Canonical || metric == Metric::Euclidean;
  case ManifoldId::Gr:
    return metric == Metric::Canonical || metric == Metric::Euclidean;
  }
  return false;
}

double check_point(ManifoldId id, const Matrix& rep) {
  switch (id) {
  case ManifoldId::GL: {
    if (rep.rows() != rep.cols() || !rep.allFinite())
      return std::numeric_limits<double>::infinity();
    // 0 when comfortably invertible, grading up to 1 at exact singularity
    const double ic = gl::inverse_condition(rep);
    return std::max(0.0, (tol::singularity - ic) / tol::singularity);
  }
  case ManifoldId::On: return ortho::membership_residual(rep);
  case ManifoldId::SPD: return spd::membership_residual(rep);
  case ManifoldId::St: return stiefel::membership_residual(rep);
  case ManifoldId::Gr: return grassmann::membership_residual(rep);
  }
  return std::numeric_limits<double>::infinity();
}

double check_tangent(ManifoldId id, const Matrix& base, const Matrix& rep) {
  if (base.rows() != rep.rows() || base.cols() != rep.cols() ||
      !rep.allFinite())
    return std::numeric_limits<double>::infinity();
  switch (id) {
  case ManifoldId::GL: return 0.0;
  case ManifoldId::On: return ortho::tangency_residual(base, rep);
  case ManifoldId::SPD: return spd::tangency_residual(rep);
  case ManifoldId::St: return stiefel::tangency_residual(base, rep);
  case ManifoldId::Gr: return grassmann::tangency_residual(base, rep);
  }
  return std::numeric_limits<double>::infinity();
}

namespace {

ErrorCode membership_error_code(ManifoldId id) {
  switch (id) {
  case ManifoldId::GL: return ErrorCode::SingularInput;
  case ManifoldId::SPD: return ErrorCode::NotPositiveDefinite;
  case ManifoldId::On:
  case ManifoldId::St:
  case ManifoldId::Gr: return ErrorCode::NotOrthonormal;
  }
  return ErrorCode::NotOrthonormal;
}

} // namespace

ManifoldPoint make_point(ManifoldId id, const Matrix& rep,
                         double membership_tol) {
  require_finite(rep, "make_point");
  const double residual = check_point(id, rep);
  if (residual > membership_tol)
    fail(membership_error_code(id),
         "make_point: matrix fails " + to_string(id) +
             " membership (residual " + std::to_string(residual) + ")");
  return ManifoldPoint{id, rep};
}

TangentVector make_tangent(const ManifoldPoint& base, const Matrix& rep,
                           double tangency_tol) {
  require_finite(rep, "make_tangent");
  const double residual = check_tangent(base.manifold, base.rep, rep);
  if (residual > tangency_tol * std::max(1.0, rep.norm()))
    fail(ErrorCode::NotTangent,
         "make_tangent: matrix fails " + to_string(base.manifold) +
             " tangency at the base point (residual " +
             std::to_string(residual) + ")");
  return TangentVector{base, rep};
}

double inner(const TangentVector& v, const TangentVector& w,
             std::optional<Metric> metric) {
  require_same_base(v, w, "inner");
  const ManifoldId id = v.base.manifold;
  const Metric m = resolve_metric(id, metric, "inner");
  switch (id) {
  case ManifoldId::GL:
    if (m == Metric::LeftInvariant)
      return gl::inner_left_invariant(v.base.rep, v.rep, w.rep);
    return (v.rep.transpose() * w.rep).trace();
  case ManifoldId::On:
    return (v.rep.transpose() * w.rep).trace();
  case ManifoldId::SPD:
    return spd::inner_natural(v.base.rep, v.rep, w.rep);
  case ManifoldId::St:
    return stiefel::inner(v.base.rep, v.rep, w.rep,
                          m == Metric::Euclidean
                              ? stiefel::StMetric::Euclidean
                              : stiefel::StMetric::Canonical);
  case ManifoldId::Gr:
    return grassmann::inner(v.rep, w.rep);
  }
  fail(ErrorCode::UnsupportedMetric, "inner: unreachable");
}

ManifoldPoint exp(const ManifoldPoint& p, const TangentVector& v,
                  std::optional<Metric> metric) {
  const ManifoldId id = p.manifold;
  const Metric m = resolve_metric(id, metric, "exp");
  switch (id) {
  case ManifoldId::GL:
    if (m == Metric::LeftInvariant)
      return {id, gl::geodesic_left_invariant(p.rep, v.rep, 1.0)};
    return {id, gl::exp_flat(p.rep, v.rep)};
  case ManifoldId::On:
    return {id, ortho::exp(p.rep, v.rep)};
  case ManifoldId::SPD:
    return {id, spd::exp(p.rep, v.rep)};
  case ManifoldId::St:
    if (m == Metric::Euclidean)
      return {id, stiefel::exp_euclidean(p.rep, v.rep)};
    return {id, stiefel::exp_canonical(p.rep, v.rep)};
  case ManifoldId::Gr:
    return {id, grassmann::exp(p.rep, v.rep)};
  }
  fail(ErrorCode::UnsupportedMetric, "exp: unreachable");
}

TangentVector log(const ManifoldPoint& p, const ManifoldPoint& q,
                  std::optional<Metric> metric) {
  require_same_manifold(p, q, "log");
  const ManifoldId id = p.manifold;
  const Metric m = resolve_metric(id, metric, "log");
  switch (id) {
  case ManifoldId::GL:
    if (m == Metric::LeftInvariant)
      return {p, gl::log_left_invariant_normal(p.rep, q.rep)};
    return {p, gl::log_flat(p.rep, q.rep).delta};
  case ManifoldId::On:
    return {p, ortho::log(p.rep, q.rep)};
  case ManifoldId::SPD:
    return {p, spd::log(p.rep, q.rep)};
  case ManifoldId::St: {
    if (m == Metric::Euclidean)
      fail(ErrorCode::UnsupportedMetric,
           "log: the Euclidean-metric Stiefel logarithm is not provided");
    return {p, stiefel::log_canonical(p.rep, q.rep).delta};
  }
  case ManifoldId::Gr:
    return {p, grassmann::log_modified(p.rep, q.rep)};
  }
  fail(ErrorCode::UnsupportedMetric, "log: unreachable");
}

double dist(const ManifoldPoint& p, const ManifoldPoint& q,
            std::optional<Metric> metric) {
  require_same_manifold(p, q, "dist");
  const ManifoldId id = p.manifold;
  const Metric m = resolve_metric(id, metric, "dist");
  switch (id) {
  case ManifoldId::GL:
    if (m == Metric::LeftInvariant)
      fail(ErrorCode::UnsupportedMetric,
           "dist: no closed-form left-invariant GL distance is available");
    return gl::dist_flat(p.rep, q.rep);
  case ManifoldId::On:
    return ortho::dist(p.rep, q.rep); // closed form is authoritative
  case ManifoldId::SPD:
    return spd::dist(p.rep, q.rep);
  case ManifoldId::St:
    if (m == Metric::Euclidean)
      fail(ErrorCode::UnsupportedMetric,
           "dist: Euclidean-metric Stiefel distance requires the "
           "unsupported Euclidean logarithm");
    return stiefel::dist_canonical(p.rep, q.rep);
  case ManifoldId::Gr:
    return grassmann::dist(p.rep, q.rep); // closed form is authoritative
  }
  fail(ErrorCode::UnsupportedMetric, "dist: unreachable");
}

ManifoldPoint geodesic(const ManifoldPoint& p, const TangentVector& v,
                       double t, std::optional<Metric> metric) {
  TangentVector scaled{p, t * v.rep};
  return exp(p, scaled, metric);
}

TangentVector project_tangent(const ManifoldPoint& p, const Matrix& ambient) {
  require_same_shape(p.rep, ambient, "project_tangent");
  const ManifoldId id = p.manifold;
  switch (id) {
  case ManifoldId::GL:
    return {p, ambient};
  case ManifoldId::On:
  case ManifoldId::St:
    return {p, stiefel::project_tangent(p.rep, ambient)};
  case ManifoldId::SPD:
    return {p, symmetric_part(ambient)};
  case ManifoldId::Gr:
    return {p, grassmann::project_tangent(p.rep, ambient)};
  }
  fail(ErrorCode::UnsupportedMetric, "project_tangent: unreachable");
}

} // namespace manifoldkit

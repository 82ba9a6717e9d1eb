#include "manifoldkit/batch.hpp"

#include <exception>

namespace manifoldkit::batch {

namespace {

// Run f(i) for i in [0, count) serially or under OpenMP. Exceptions are
// collected per index and the lowest-index one is rethrown, so both paths
// fail identically.
template <typename F>
void for_each_index(int count, Exec exec, F&& f) {
  std::vector<std::exception_ptr> errors(static_cast<size_t>(count), nullptr);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
      try {
        f(i);
      } catch (...) {
        errors[static_cast<size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < count; ++i) {
      try {
        f(i);
      } catch (...) {
        errors[static_cast<size_t>(i)] = std::current_exception();
      }
    }
  }
  for (const std::exception_ptr& e : errors)
    if (e)
      std::rethrow_exception(e);
}

} // namespace

std::vector<ManifoldPoint> interpolate_many(const SampleSet& samples,
                                            const std::vector<Vector>& mu_stars,
                                            const InterpConfig& config,
                                            Exec exec,
                                            std::vector<EvalReport>* reports) {
  samples.validate();
  const int count = static_cast<int>(mu_stars.size());
  std::vector<ManifoldPoint> out(static_cast<size_t>(count));
  if (reports)
    reports->assign(static_cast<size_t>(count), EvalReport{});
  for_each_index(count, exec, [&](int i) {
    const Vector& mu = mu_stars[static_cast<size_t>(i)];
    ManifoldPoint& slot = out[static_cast<size_t>(i)];
    EvalReport local;
    switch (config.method) {
    case InterpMethod::Tangent:
      local.base_index = resolve_base_index(samples, config.interp);
      slot = interp_normal_coords(samples, mu, config.scheme, config.interp);
      break;
    case InterpMethod::Geodesic:
      if (mu.size() != 1)
        fail(ErrorCode::WeightSchemeUnsupported,
             "interpolate_many: geodesic method requires 1-d parameters");
      slot = interp_geodesic(samples, mu(0), config.interp, &local.segment);
      break;
    case InterpMethod::Karcher:
      slot = karcher_interpolate(samples, mu, config.scheme, config.karcher,
                                 &local.karcher);
      break;
    }
    if (reports)
      (*reports)[static_cast<size_t>(i)] = std::move(local);
  });
  return out;
}

Matrix distance_matrix(const std::vector<ManifoldPoint>& points,
                       std::optional<Metric> metric, Exec exec) {
  const int k = static_cast<int>(points.size());
  Matrix d = Matrix::Zero(k, k);
  // flatten the strict upper triangle into one index range
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(k) * (k - 1) / 2);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      pairs.emplace_back(i, j);
  for_each_index(static_cast<int>(pairs.size()), exec, [&](int idx) {
    const auto [i, j] = pairs[static_cast<size_t>(idx)];
    const double dij = dist(points[static_cast<size_t>(i)],
                            points[static_cast<size_t>(j)], metric);
    d(i, j) = dij;
    d(j, i) = dij;
  });
  return d;
}

std::vector<ManifoldPoint> geodesic_many(const ManifoldPoint& p,
                                         const TangentVector& v,
                                         const std::vector<double>& ts,
                                         std::optional<Metric> metric,
                                         Exec exec) {
  const int count = static_cast<int>(ts.size());
  std::vector<ManifoldPoint> out(static_cast<size_t>(count));
  for_each_index(count, exec, [&](int i) {
    out[static_cast<size_t>(i)] =
        geodesic(p, v, ts[static_cast<size_t>(i)], metric);
  });
  return out;
}

} // namespace manifoldkit::batch

#include "manifoldkit/interpolate.hpp"

#include "manifoldkit/kernels.hpp"
#include "manifoldkit/stiefel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace manifoldkit {

namespace {

TangentVector log_from(const ManifoldPoint& base, const ManifoldPoint& target,
                       std::optional<Metric> metric, int sample_index) {
  try {
    return log(base, target, metric);
  } catch (const ManifoldError& err) {
    fail(ErrorCode::LogDomainFailure,
         "log of sample " + std::to_string(sample_index) +
             " from the base point failed: " + err.what());
  }
}

int medoid_index(const SampleSet& samples, std::optional<Metric> metric) {
  // minimize the maximum distance to the other samples
  const int k = samples.size();
  int best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    double score = 0.0;
    for (int j = 0; j < k; ++j)
      if (j != i)
        score = std::max(score,
                         dist(samples.points[i], samples.points[j], metric));
    if (score < best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

} // namespace

void SampleSet::validate() const {
  if (points.empty())
    fail(ErrorCode::DimensionMismatch, "SampleSet: no samples");
  if (params.size() != points.size())
    fail(ErrorCode::DimensionMismatch,
         "SampleSet: " + std::to_string(params.size()) + " parameters for " +
             std::to_string(points.size()) + " points");
  const ManifoldId id = points.front().manifold;
  const Eigen::Index rows = points.front().rep.rows();
  const Eigen::Index cols = points.front().rep.cols();
  const Eigen::Index d = params.front().size();
  double scale = 1.0;
  for (const Vector& mu : params)
    scale = std::max(scale, mu.lpNorm<Eigen::Infinity>());
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].manifold != id)
      fail(ErrorCode::DimensionMismatch,
           "SampleSet: sample " + std::to_string(i) +
               " lives on a different manifold");
    if (points[i].rep.rows() != rows || points[i].rep.cols() != cols)
      fail(ErrorCode::DimensionMismatch,
           "SampleSet: sample " + std::to_string(i) + " has a different "
                                                      "shape");
    if (params[i].size() != d)
      fail(ErrorCode::DimensionMismatch,
           "SampleSet: parameter " + std::to_string(i) +
               " has a different dimension");
    for (size_t j = i + 1; j < points.size(); ++j)
      if ((params[i] - params[j]).lpNorm<Eigen::Infinity>() < 1e-12 * scale)
        fail(ErrorCode::DimensionMismatch,
             "SampleSet: parameters " + std::to_string(i) + " and " +
                 std::to_string(j) + " coincide");
  }
}

int resolve_base_index(const SampleSet& samples, const InterpOptions& opts) {
  if (opts.base_policy == BasePointPolicy::Medoid)
    return medoid_index(samples, opts.metric);
  if (opts.base_index < 0 || opts.base_index >= samples.size())
    fail(ErrorCode::OutOfRange,
         "interp_normal_coords: base index " +
             std::to_string(opts.base_index) + " outside the sample set");
  return opts.base_index;
}

ManifoldPoint interp_normal_coords(const SampleSet& samples,
                                   const Vector& mu_star,
                                   const WeightScheme& scheme,
                                   const InterpOptions& opts) {
  samples.validate();
  const int base = resolve_base_index(samples, opts);
  const ManifoldPoint& p = samples.points[base];

  const Vector w = weights_at(scheme, samples.params, mu_star);
  Matrix v_star = Matrix::Zero(p.rep.rows(), p.rep.cols());
  for (int j = 0; j < samples.size(); ++j) {
    if (j == base) // log of the base point is zero
      continue;
    const TangentVector v_j = log_from(p, samples.points[j], opts.metric, j);
    v_star += w(j) * v_j.rep;
  }
  return exp(p, TangentVector{p, v_star}, opts.metric);
}

ManifoldPoint interp_geodesic(const SampleSet& samples, double mu_star,
                              const InterpOptions& opts, int* segment_out) {
  samples.validate();
  const int k = samples.size();
  for (int i = 0; i < k; ++i) {
    if (samples.params[i].size() != 1)
      fail(ErrorCode::WeightSchemeUnsupported,
           "interp_geodesic: requires 1-d parameters");
    if (i > 0 && samples.params[i](0) <= samples.params[i - 1](0))
      fail(ErrorCode::OutOfRange,
           "interp_geodesic: parameters must be strictly ascending");
  }
  const double lo = samples.params.front()(0);
  const double hi = samples.params.back()(0);
  if (mu_star < lo || mu_star > hi)
    fail(ErrorCode::OutOfRange,
         "interp_geodesic: mu* = " + std::to_string(mu_star) +
             " outside the sampled range [" + std::to_string(lo) + ", " +
             std::to_string(hi) + "]");
  if (segment_out)
    *segment_out = 0;
  if (k == 1)
    return samples.points.front();

  int seg = 0;
  for (int i = 0; i + 1 < k; ++i) {
    seg = i;
    if (mu_star <= samples.params[i + 1](0))
      break;
  }
  if (segment_out)
    *segment_out = seg;
  const double mu_a = samples.params[seg](0);
  const double mu_b = samples.params[seg + 1](0);
  const double t = (mu_star - mu_a) / (mu_b - mu_a);
  if (t == 0.0)
    return samples.points[seg];
  const TangentVector v = log_from(samples.points[seg],
                                   samples.points[seg + 1], opts.metric, seg + 1);
  return geodesic(samples.points[seg], v, t, opts.metric);
}

ManifoldPoint karcher_interpolate(const SampleSet& samples,
                                  const Vector& mu_star,
                                  const WeightScheme& scheme,
                                  const KarcherOptions& opts,
                                  KarcherReport* report) {
  samples.validate();
  const Vector w = weights_at(scheme, samples.params, mu_star);

  ManifoldPoint q = [&] {
    if (opts.initial_guess)
      return *opts.initial_guess;
    int best = 0;
    w.maxCoeff(&best);
    return samples.points[best];
  }();

  KarcherReport local;
  KarcherReport& rep = report ? *report : local;
  rep = KarcherReport{};

  // objective and gradient from the tangent images of the samples
  auto evaluate = [&](const ManifoldPoint& at, Matrix& grad) {
    grad = Matrix::Zero(at.rep.rows(), at.rep.cols());
    double f = 0.0;
    for (int i = 0; i < samples.size(); ++i) {
      const TangentVector v = log_from(at, samples.points[i], opts.metric, i);
      const double norm2 = inner(v, v, opts.metric);
      f += 0.5 * w(i) * norm2;
      grad -= w(i) * v.rep;
    }
    return f;
  };

  Matrix grad;
  double f = evaluate(q, grad);
  for (int k = 0; k <= opts.max_iter; ++k) {
    const TangentVector g{q, grad};
    const double gnorm = std::sqrt(std::max(0.0, inner(g, g, opts.metric)));
    rep.gradient_norm_history.push_back(gnorm);
    rep.final_gradient_norm = gnorm;
    rep.iterations = k;
    if (gnorm <= opts.tau)
      return q;
    if (k == opts.max_iter)
      break;

    double alpha = opts.initial_step;
    bool stepped = false;
    for (int h = 0; h <= opts.max_halvings; ++h) {
      ManifoldPoint trial;
      Matrix trial_grad;
      double trial_f;
      try {
        trial = exp(q, TangentVector{q, -alpha * grad}, opts.metric);
        trial_f = evaluate(trial, trial_grad);
      } catch (const ManifoldError&) {
        alpha *= 0.5; // stepped outside a log domain; shorten
        continue;
      }
      if (trial_f < f) {
        q = trial;
        f = trial_f;
        grad = trial_grad;
        stepped = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!stepped)
      break; // line search stalled; report below
  }

  std::ostringstream os;
  os << "karcher_interpolate: gradient norm " << rep.final_gradient_norm
     << " above tau = " << opts.tau << " after " << rep.iterations
     << " iterations; history:";
  for (double g : rep.gradient_norm_history)
    os << " " << g;
  fail(ErrorCode::NoConvergence, os.str());
}

ManifoldPoint extrapolate_geodesic(const ManifoldPoint& p0,
                                   const TangentVector& v0, double mu_star,
                                   std::optional<Metric> metric) {
  const double residual = check_tangent(p0, v0);
  if (residual > tol::tangency * std::max(1.0, v0.rep.norm()))
    fail(ErrorCode::NotTangent,
         "extrapolate_geodesic: velocity is not tangent at the base point "
         "(residual " +
             std::to_string(residual) + ")");
  return exp(p0, TangentVector{p0, mu_star * v0.rep}, metric);
}

namespace {

// Shared core: derivative of the thin SVD with the gap/nonzero conditions
// enforced for column pairs that touch the leading `active` columns.
SvdDerivative svd_derivative_impl(const Matrix& s, const Matrix& s_dot,
                                  int active, double gap_tol) {
  require_same_shape(s, s_dot, "svd_derivative");
  require_finite(s, "svd_derivative");
  require_finite(s_dot, "svd_derivative");
  if (s.rows() < s.cols())
    fail(ErrorCode::DimensionMismatch,
         "svd_derivative: expects a tall matrix (rows >= cols)");
  const int m = static_cast<int>(s.cols());

  const ThinSVD svd = thin_svd(s);
  const Vector& sigma = svd.s;
  const double sigma_max = sigma(0);

  for (int j = 0; j < std::min(active, m); ++j)
    if (sigma(j) <= gap_tol * std::max(sigma_max, 1e-300))
      fail(ErrorCode::SingularValueZero,
           "svd_derivative: singular value " + std::to_string(j) +
               " is zero to working precision");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      if (i >= active && j >= active)
        continue;
      if ((sigma(i) - sigma(j)) < gap_tol * sigma_max)
        fail(ErrorCode::DegenerateSpectrum,
             "svd_derivative: singular values " + std::to_string(i) +
                 " and " + std::to_string(j) + " are too close (gap " +
                 std::to_string(sigma(i) - sigma(j)) + ")");
    }

  const Matrix g = svd.u.transpose() * s_dot * svd.v; // g(i,j) = u_i^T S' v_j

  SvdDerivative out;
  out.sigma_dot = g.diagonal();

  Matrix a = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j || (i >= active && j >= active))
        continue;
      a(i, j) = (sigma(j) * g(j, i) + sigma(i) * g(i, j)) /
                ((sigma(j) + sigma(i)) * (sigma(j) - sigma(i)));
    }
  out.z_dot = svd.v * a;

  const Matrix sigma_inv = sigma.array().inverse().matrix().asDiagonal();
  out.u_dot = (s_dot * svd.v +
               svd.u * (sigma.asDiagonal() * a -
                        Matrix(out.sigma_dot.asDiagonal()))) *
              sigma_inv;
  return out;
}

} // namespace

SvdDerivative svd_derivative(const Matrix& s, const Matrix& s_dot,
                             double gap_tol) {
  return svd_derivative_impl(s, s_dot, static_cast<int>(s.cols()), gap_tol);
}

PodExtrapolation extrapolate_pod_basis(const Matrix& snapshots,
                                       const Matrix& snapshots_dot, int rank,
                                       double mu_star, double gap_tol) {
  if (rank < 1 || rank > snapshots.cols())
    fail(ErrorCode::OutOfRange,
         "extrapolate_pod_basis: rank " + std::to_string(rank) +
             " outside [1, " + std::to_string(snapshots.cols()) + "]");
  const SvdDerivative d =
      svd_derivative_impl(snapshots, snapshots_dot, rank, gap_tol);
  const ThinSVD svd = thin_svd(snapshots);
  const Matrix u = svd.u.leftCols(rank);
  Matrix u_dot = d.u_dot.leftCols(rank);

  // truncation can leave a small non-tangent component; remove it and report
  const Matrix repaired = stiefel::project_tangent(u, u_dot);
  PodExtrapolation out;
  out.tangency_repair = (repaired - u_dot).norm();
  out.basis = stiefel::exp_canonical(u, mu_star * repaired);
  return out;
}

} // namespace manifoldkit

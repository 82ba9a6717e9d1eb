#include "manifoldkit/weights.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace manifoldkit {

namespace {

void require_1d(const std::vector<Vector>& nodes, const Vector& mu_star,
                const char* scheme) {
  if (mu_star.size() != 1)
    fail(ErrorCode::WeightSchemeUnsupported,
         std::string(scheme) +
             " weights are defined for 1-d parameters only; use the rbf "
             "scheme for scattered multi-d data");
  for (const Vector& node : nodes)
    if (node.size() != 1)
      fail(ErrorCode::WeightSchemeUnsupported,
           std::string(scheme) + " weights require 1-d parameter nodes");
}

Vector linear_1d(const std::vector<Vector>& nodes, double mu) {
  const int k = static_cast<int>(nodes.size());
  Vector w = Vector::Zero(k);
  if (k == 1) {
    w(0) = 1.0;
    return w;
  }
  std::vector<int> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return nodes[a](0) < nodes[b](0); });
  // locate the bracketing segment; end segments extend linearly
  int seg = 0;
  for (int i = 0; i + 1 < k; ++i) {
    seg = i;
    if (mu <= nodes[order[i + 1]](0))
      break;
  }
  const int lo = order[seg];
  const int hi = order[seg + 1];
  const double t = (mu - nodes[lo](0)) / (nodes[hi](0) - nodes[lo](0));
  w(lo) = 1.0 - t;
  w(hi) = t;
  return w;
}

Vector lagrange_1d(const std::vector<Vector>& nodes, double mu) {
  const int k = static_cast<int>(nodes.size());
  Vector w = Vector::Ones(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (j != i)
        w(i) *= (mu - nodes[j](0)) / (nodes[i](0) - nodes[j](0));
  return w;
}

double rbf_kernel(WeightScheme::RbfKernel kernel, double shape, double r) {
  switch (kernel) {
  case WeightScheme::RbfKernel::Gaussian: {
    const double x = shape * r;
    return std::exp(-x * x);
  }
  case WeightScheme::RbfKernel::ThinPlate:
    return r == 0.0 ? 0.0 : r * r * std::log(r);
  }
  return 0.0;
}

Vector rbf(const WeightScheme& scheme, const std::vector<Vector>& nodes,
           const Vector& mu_star) {
  const int k = static_cast<int>(nodes.size());
  for (const Vector& node : nodes)
    if (node.size() != mu_star.size())
      fail(ErrorCode::DimensionMismatch,
           "rbf weights: parameter dimension mismatch between nodes and "
           "query");
  Matrix gram(k, k);
  Vector rhs(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j)
      gram(i, j) =
          rbf_kernel(scheme.kernel, scheme.shape, (nodes[i] - nodes[j]).norm());
    rhs(i) = rbf_kernel(scheme.kernel, scheme.shape,
                        (nodes[i] - mu_star).norm());
  }
  // phi(mu)^T = k(mu)^T K^{-1}; cardinality at nodes holds by construction
  Eigen::FullPivLU<Matrix> lu(gram);
  if (!lu.isInvertible())
    fail(ErrorCode::DecompositionFailed,
         "rbf weights: kernel matrix is singular for these nodes "
         "(try a different shape parameter or kernel)");
  return lu.solve(rhs);
}

} // namespace

Vector weights_at(const WeightScheme& scheme, const std::vector<Vector>& nodes,
                  const Vector& mu_star) {
  if (nodes.empty())
    fail(ErrorCode::DimensionMismatch, "weights_at: no parameter nodes");
  Vector w;
  switch (scheme.kind) {
  case WeightScheme::Kind::Linear1d:
    require_1d(nodes, mu_star, "linear");
    w = linear_1d(nodes, mu_star(0));
    break;
  case WeightScheme::Kind::Lagrange1d:
    require_1d(nodes, mu_star, "lagrange");
    w = lagrange_1d(nodes, mu_star(0));
    break;
  case WeightScheme::Kind::Rbf:
    w = rbf(scheme, nodes, mu_star);
    break;
  }
  if (scheme.normalize) {
    const double sum = w.sum();
    if (std::abs(sum) < 1e-12)
      fail(ErrorCode::WeightSchemeUnsupported,
           "weights_at: cannot normalize, weights sum to ~0");
    w /= sum;
  }
  return w;
}

} // namespace manifoldkit

#pragma once

// Scalar weight schemes phi_i(mu*) over sampled parameter nodes. All schemes
// satisfy the cardinality condition phi_i(mu_j) = delta_ij, which the Karcher
// interpolant needs for nodal exactness.

#include "manifoldkit/types.hpp"

#include <vector>

namespace manifoldkit {

struct WeightScheme {
  enum class Kind { Linear1d, Lagrange1d, Rbf };
  enum class RbfKernel { Gaussian, ThinPlate };

  Kind kind = Kind::Linear1d;
  RbfKernel kernel = RbfKernel::Gaussian;
  double shape = 1.0;     // gaussian: exp(-(shape*r)^2)
  bool normalize = false; // opt-in: rescale so the weights sum to one
};

// One weight per node, in node order. Linear/Lagrange require 1-d parameters
// (WeightSchemeUnsupported otherwise); RBF accepts any dimension.
Vector weights_at(const WeightScheme& scheme, const std::vector<Vector>& nodes,
                  const Vector& mu_star);

} // namespace manifoldkit

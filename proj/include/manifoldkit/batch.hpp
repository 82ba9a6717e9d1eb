#pragma once

// Batch evaluation kernels. Every kernel exists in two variants: a serial
// reference implementation and an OpenMP-parallel one that must produce
// identical results (each element is an independent pure evaluation). The
// serial variants are kept for testing and benchmarking.

#include "manifoldkit/interpolate.hpp"

#include <vector>

namespace manifoldkit::batch {

enum class Exec { Serial, Parallel };

enum class InterpMethod { Tangent, Geodesic, Karcher };

struct InterpConfig {
  InterpMethod method = InterpMethod::Tangent;
  WeightScheme scheme;
  InterpOptions interp;
  KarcherOptions karcher;
};

// Per-evaluation diagnostics; which fields are meaningful depends on the
// method.
struct EvalReport {
  int base_index = -1; // tangent method
  int segment = -1;    // geodesic method
  KarcherReport karcher;
};

// Interpolate at many parameter values. Errors are deterministic: the
// failure at the lowest index is reported regardless of execution order.
std::vector<ManifoldPoint> interpolate_many(const SampleSet& samples,
                                            const std::vector<Vector>& mu_stars,
                                            const InterpConfig& config,
                                            Exec exec = Exec::Parallel,
                                            std::vector<EvalReport>* reports =
                                                nullptr);

// Full symmetric distance matrix of a point list.
Matrix distance_matrix(const std::vector<ManifoldPoint>& points,
                       std::optional<Metric> metric = std::nullopt,
                       Exec exec = Exec::Parallel);

// Evaluate one geodesic at many parameter values.
std::vector<ManifoldPoint> geodesic_many(const ManifoldPoint& p,
                                         const TangentVector& v,
                                         const std::vector<double>& ts,
                                         std::optional<Metric> metric =
                                             std::nullopt,
                                         Exec exec = Exec::Parallel);

} // namespace manifoldkit::batch

#pragma once

// Text matrix files:
//   # manifold=<GL|On|SPD|St|Gr|raw> n=<rows> p=<cols>
//   <rows> lines of <cols> whitespace-separated decimals (17 significant
//   digits on output, so write-then-read is bit exact)
// `raw` marks plain data payloads (snapshot matrices, tangents read without
// a membership check).

#include "manifoldkit/manifold.hpp"

#include <optional>
#include <string>

namespace manifoldkit::io {

struct MatrixFile {
  std::optional<ManifoldId> manifold; // nullopt for raw payloads
  Matrix data;
};

MatrixFile read_matrix_file(const std::string& path);

// Parse and enforce the declared manifold's membership predicate.
ManifoldPoint read_point(const std::string& path, bool validate = true,
                         double membership_tol = tol::membership);

void write_matrix_file(const std::string& path,
                       std::optional<ManifoldId> manifold, const Matrix& m);

// Write to <path>.tmp and rename into place.
void write_matrix_file_atomic(const std::string& path,
                              std::optional<ManifoldId> manifold,
                              const Matrix& m);

std::string format_value(double x); // 17 significant digits

} // namespace manifoldkit::io

#include "manifoldkit/matrix_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace manifoldkit::io {

namespace {

[[noreturn]] void parse_fail(const std::string& path,
                             const std::string& what) {
  fail(ErrorCode::ParseError, path + ": " + what);
}

bool take_field(const std::string& token, const std::string& key,
                std::string& value) {
  if (token.rfind(key + "=", 0) != 0)
    return false;
  value = token.substr(key.size() + 1);
  return true;
}

} // namespace

std::string format_value(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    parse_fail(path, "cannot open file");

  std::string header;
  if (!std::getline(in, header))
    parse_fail(path, "empty file");
  std::istringstream hs(header);
  std::string hash;
  hs >> hash;
  if (hash != "#")
    parse_fail(path, "header must start with '#'");

  std::string manifold_name;
  long rows = -1;
  long cols = -1;
  std::string token;
  while (hs >> token) {
    std::string value;
    if (take_field(token, "manifold", value)) {
      manifold_name = value;
    } else if (take_field(token, "n", value)) {
      rows = std::strtol(value.c_str(), nullptr, 10);
    } else if (take_field(token, "p", value)) {
      cols = std::strtol(value.c_str(), nullptr, 10);
    } else {
      parse_fail(path, "unknown header field '" + token + "'");
    }
  }
  if (manifold_name.empty() || rows <= 0 || cols <= 0)
    parse_fail(path, "header needs manifold=<id> n=<rows> p=<cols>");

  MatrixFile out;
  if (manifold_name != "raw") {
    const auto id = parse_manifold(manifold_name);
    if (!id)
      parse_fail(path, "unknown manifold id '" + manifold_name + "'");
    out.manifold = *id;
  }

  out.data.resize(rows, cols);
  std::string line;
  long r = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first))
      continue; // blank line
    if (first[0] == '#')
      continue;
    if (r >= rows)
      parse_fail(path, "more data rows than the declared n=" +
                           std::to_string(rows));
    ls.clear();
    ls.seekg(0);
    for (long c = 0; c < cols; ++c) {
      double v;
      if (!(ls >> v))
        parse_fail(path, "row " + std::to_string(r + 1) + " has fewer than " +
                             std::to_string(cols) + " columns");
      out.data(r, c) = v;
    }
    std::string extra;
    if (ls >> extra)
      parse_fail(path, "row " + std::to_string(r + 1) + " has more than " +
                           std::to_string(cols) + " columns");
    ++r;
  }
  if (r != rows)
    parse_fail(path, "expected " + std::to_string(rows) + " rows, found " +
                         std::to_string(r));
  if (!out.data.allFinite())
    parse_fail(path, "matrix contains NaN/Inf entries");
  return out;
}

ManifoldPoint read_point(const std::string& path, bool validate,
                         double membership_tol) {
  const MatrixFile file = read_matrix_file(path);
  if (!file.manifold)
    parse_fail(path, "expected a manifold point, found a raw payload");
  if (!validate)
    return ManifoldPoint{*file.manifold, file.data};
  return make_point(*file.manifold, file.data, membership_tol);
}

void write_matrix_file(const std::string& path,
                       std::optional<ManifoldId> manifold, const Matrix& m) {
  std::ofstream out(path);
  if (!out)
    fail(ErrorCode::ParseError, path + ": cannot open for writing");
  out << "# manifold=" << (manifold ? to_string(*manifold) : "raw")
      << " n=" << m.rows() << " p=" << m.cols() << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c)
        out << ' ';
      out << format_value(m(r, c));
    }
    out << "\n";
  }
  if (!out)
    fail(ErrorCode::ParseError, path + ": write failed");
}

void write_matrix_file_atomic(const std::string& path,
                              std::optional<ManifoldId> manifold,
                              const Matrix& m) {
  const std::string tmp = path + ".tmp";
  write_matrix_file(tmp, manifold, m);
  std::filesystem::rename(tmp, path);
}

} // namespace manifoldkit::io

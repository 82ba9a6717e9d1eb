// Batch front-end for the manifold library: exp/log/dist on matrix files,
// interpolation over sample manifests, geodesic and POD-basis extrapolation.
//
// Exit codes: 0 success, 2 parse/input errors, 3 domain errors,
// 4 iterative-solver non-convergence.

#include "manifoldkit/batch.hpp"
#include "manifoldkit/gl.hpp"
#include "manifoldkit/interpolate.hpp"
#include "manifoldkit/matrix_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace manifoldkit;

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
  case ErrorCode::ParseError:
  case ErrorCode::DimensionMismatch:
  case ErrorCode::NotFinite:
    return 2;
  case ErrorCode::NoConvergence:
    return 4;
  default:
    return 3;
  }
}

struct RunConfig {
  double membership_tol = tol::membership;
  double round_trip_tol = tol::round_trip;
  double karcher_tau = 1e-9;
  int max_iter = 100;
  std::string metric;          // empty: per-manifold default
  std::string scheme = "linear";
  std::string rbf_kernel = "gaussian";
  double rbf_shape = 1.0;
  bool normalize_weights = false;
  int base_index = 0;
  bool medoid = false;
  int jobs = 1;
  bool validate = true;
};

void check_positive(double value, const char* name) {
  if (!(value > 0.0))
    fail(ErrorCode::ParseError,
         std::string("config: ") + name + " must be positive");
}

// Defaults come from MANIFOLDKIT_CONFIG (JSON) when set; flags override.
RunConfig load_config_from_env() {
  RunConfig config;
  const char* path = std::getenv("MANIFOLDKIT_CONFIG");
  if (!path || !*path)
    return config;
  std::ifstream in(path);
  if (!in)
    fail(ErrorCode::ParseError,
         std::string("MANIFOLDKIT_CONFIG: cannot open ") + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& err) {
    fail(ErrorCode::ParseError,
         std::string("MANIFOLDKIT_CONFIG: ") + err.what());
  }
  config.membership_tol = j.value("membership_tol", config.membership_tol);
  config.round_trip_tol = j.value("round_trip_tol", config.round_trip_tol);
  config.karcher_tau = j.value("karcher_tau", config.karcher_tau);
  config.max_iter = j.value("max_iter", config.max_iter);
  config.metric = j.value("metric", config.metric);
  config.scheme = j.value("scheme", config.scheme);
  config.rbf_kernel = j.value("rbf_kernel", config.rbf_kernel);
  config.rbf_shape = j.value("rbf_shape", config.rbf_shape);
  config.normalize_weights =
      j.value("normalize_weights", config.normalize_weights);
  config.base_index = j.value("base_index", config.base_index);
  config.medoid = j.value("medoid", config.medoid);
  config.jobs = j.value("jobs", config.jobs);
  check_positive(config.membership_tol, "membership_tol");
  check_positive(config.round_trip_tol, "round_trip_tol");
  check_positive(config.karcher_tau, "karcher_tau");
  return config;
}

std::optional<Metric> metric_from(const std::string& name) {
  if (name.empty())
    return std::nullopt;
  const auto metric = parse_metric(name);
  if (!metric)
    fail(ErrorCode::ParseError, "unknown metric '" + name + "'");
  return metric;
}

WeightScheme scheme_from(const RunConfig& config) {
  WeightScheme scheme;
  if (config.scheme == "linear")
    scheme.kind = WeightScheme::Kind::Linear1d;
  else if (config.scheme == "lagrange")
    scheme.kind = WeightScheme::Kind::Lagrange1d;
  else if (config.scheme == "rbf")
    scheme.kind = WeightScheme::Kind::Rbf;
  else
    fail(ErrorCode::ParseError,
         "unknown scheme '" + config.scheme + "' (linear|lagrange|rbf)");
  if (config.rbf_kernel == "gaussian")
    scheme.kernel = WeightScheme::RbfKernel::Gaussian;
  else if (config.rbf_kernel == "thin-plate")
    scheme.kernel = WeightScheme::RbfKernel::ThinPlate;
  else
    fail(ErrorCode::ParseError, "unknown rbf kernel '" + config.rbf_kernel +
                                    "' (gaussian|thin-plate)");
  scheme.shape = config.rbf_shape;
  scheme.normalize = config.normalize_weights;
  return scheme;
}

ManifoldPoint load_point(const std::string& path, const RunConfig& config) {
  return io::read_point(path, config.validate, config.membership_tol);
}

TangentVector load_tangent(const std::string& path, const ManifoldPoint& base,
                           const RunConfig& config) {
  const io::MatrixFile file = io::read_matrix_file(path);
  if (!config.validate)
    return TangentVector{base, file.data};
  return make_tangent(base, file.data);
}

// Manifest lines: "mu_1 [mu_2 ...] path". The parameter dimension is
// inferred from the column count and must be consistent.
SampleSet read_manifest(const std::string& path, const RunConfig& config) {
  std::ifstream in(path);
  if (!in)
    fail(ErrorCode::ParseError, path + ": cannot open manifest");
  SampleSet set;
  std::string line;
  long lineno = 0;
  Eigen::Index d = -1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string token;
    while (ls >> token)
      tokens.push_back(token);
    if (tokens.empty() || tokens.front()[0] == '#')
      continue;
    if (tokens.size() < 2)
      fail(ErrorCode::ParseError,
           path + ":" + std::to_string(lineno) +
               ": need at least one parameter and a file path");
    const std::string file = tokens.back();
    Vector mu(static_cast<Eigen::Index>(tokens.size()) - 1);
    for (size_t i = 0; i + 1 < tokens.size(); ++i) {
      char* end = nullptr;
      mu(static_cast<Eigen::Index>(i)) =
          std::strtod(tokens[i].c_str(), &end);
      if (end == tokens[i].c_str() || *end != '\0')
        fail(ErrorCode::ParseError,
             path + ":" + std::to_string(lineno) + ": bad parameter value '" +
                 tokens[i] + "'");
    }
    if (d < 0)
      d = mu.size();
    else if (mu.size() != d)
      fail(ErrorCode::ParseError,
           path + ":" + std::to_string(lineno) +
               ": inconsistent parameter dimension");
    set.params.push_back(mu);
    set.points.push_back(load_point(file, config));
  }
  if (set.points.empty())
    fail(ErrorCode::ParseError, path + ": manifest lists no samples");
  return set;
}

Vector parse_mu(const std::string& text) {
  std::vector<double> values;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0')
      fail(ErrorCode::ParseError, "bad --mu-star component '" + item + "'");
    values.push_back(v);
  }
  if (values.empty())
    fail(ErrorCode::ParseError, "empty --mu-star value");
  Vector mu(static_cast<Eigen::Index>(values.size()));
  for (size_t i = 0; i < values.size(); ++i)
    mu(static_cast<Eigen::Index>(i)) = values[i];
  return mu;
}

std::string instantiate_pattern(const std::string& pattern, size_t index,
                                size_t total) {
  const auto pos = pattern.find("{}");
  if (pos == std::string::npos) {
    if (total > 1)
      fail(ErrorCode::ParseError,
           "--out needs a '{}' placeholder when several --mu-star values "
           "are given");
    return pattern;
  }
  return pattern.substr(0, pos) + std::to_string(index) +
         pattern.substr(pos + 2);
}

void write_report(const std::string& path, const std::string& method,
                  const Vector& mu, const SampleSet& samples,
                  const batch::EvalReport& report) {
  std::ofstream out(path);
  if (!out)
    fail(ErrorCode::ParseError, path + ": cannot write report");
  out << "method=" << method << "\n";
  out << "manifold=" << to_string(samples.manifold()) << "\n";
  out << "samples=" << samples.size() << "\n";
  out << "mu_star=";
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    out << (i ? "," : "") << io::format_value(mu(i));
  out << "\n";
  if (report.base_index >= 0)
    out << "base_index=" << report.base_index << "\n";
  if (report.segment >= 0)
    out << "segment=" << report.segment << "\n";
  if (method == "karcher") {
    out << "iterations=" << report.karcher.iterations << "\n";
    out << "gradient_norm=" << io::format_value(
                                   report.karcher.final_gradient_norm)
        << "\n";
    out << "gradient_history=";
    for (size_t i = 0; i < report.karcher.gradient_norm_history.size(); ++i)
      out << (i ? "," : "")
          << io::format_value(report.karcher.gradient_norm_history[i]);
    out << "\n";
  }
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

struct ExpArgs {
  std::string base, tangent, out;
  std::string metric;
};

int cmd_exp(const ExpArgs& args, RunConfig config) {
  const ManifoldPoint p = load_point(args.base, config);
  const TangentVector v = load_tangent(args.tangent, p, config);
  const ManifoldPoint q = exp(p, v, metric_from(
                                        args.metric.empty() ? config.metric
                                                            : args.metric));
  io::write_matrix_file_atomic(args.out, q.manifold, q.rep);
  return 0;
}

struct LogArgs {
  std::string base, target, out;
  std::string metric;
};

int cmd_log(const LogArgs& args, RunConfig config) {
  const ManifoldPoint p = load_point(args.base, config);
  const ManifoldPoint q = load_point(args.target, config);
  const auto metric =
      metric_from(args.metric.empty() ? config.metric : args.metric);
  if (p.manifold == ManifoldId::GL &&
      metric.value_or(default_metric(ManifoldId::GL)) == Metric::Euclidean) {
    const gl::FlatLog flat = gl::log_flat(p.rep, q.rep);
    if (flat.leaves_component)
      std::cerr << "manifoldkit: warning: endpoints lie in different "
                   "components of GL(n); the straight line leaves the "
                   "manifold\n";
    io::write_matrix_file_atomic(args.out, std::nullopt, flat.delta);
    return 0;
  }
  const TangentVector v = log(p, q, metric);
  io::write_matrix_file_atomic(args.out, std::nullopt, v.rep);
  return 0;
}

struct DistArgs {
  std::string a, b;
  std::string metric;
};

int cmd_dist(const DistArgs& args, RunConfig config) {
  const ManifoldPoint p = load_point(args.a, config);
  const ManifoldPoint q = load_point(args.b, config);
  const double d = dist(p, q, metric_from(
                                  args.metric.empty() ? config.metric
                                                      : args.metric));
  std::cout << io::format_value(d) << "\n";
  return 0;
}

struct InterpArgs {
  std::string manifest;
  std::vector<std::string> mu_stars;
  std::string method = "tangent";
  std::string out;
  std::string report;
};

int cmd_interp(const InterpArgs& args, RunConfig config) {
  const SampleSet samples = read_manifest(args.manifest, config);

  batch::InterpConfig interp;
  if (args.method == "tangent")
    interp.method = batch::InterpMethod::Tangent;
  else if (args.method == "geodesic")
    interp.method = batch::InterpMethod::Geodesic;
  else if (args.method == "karcher")
    interp.method = batch::InterpMethod::Karcher;
  else
    fail(ErrorCode::ParseError,
         "unknown method '" + args.method + "' (tangent|geodesic|karcher)");

  interp.scheme = scheme_from(config);
  const auto metric = metric_from(config.metric);
  interp.interp.metric = metric;
  interp.interp.base_policy = config.medoid ? BasePointPolicy::Medoid
                                            : BasePointPolicy::Index;
  interp.interp.base_index = config.base_index;
  interp.karcher.metric = metric;
  interp.karcher.tau = config.karcher_tau;
  interp.karcher.max_iter = config.max_iter;

  std::vector<Vector> mus;
  for (const std::string& text : args.mu_stars)
    mus.push_back(parse_mu(text));

#ifdef _OPENMP
  if (config.jobs > 0)
    omp_set_num_threads(config.jobs);
#endif
  const batch::Exec exec =
      config.jobs == 1 ? batch::Exec::Serial : batch::Exec::Parallel;

  std::vector<batch::EvalReport> reports;
  const std::vector<ManifoldPoint> results =
      batch::interpolate_many(samples, mus, interp, exec, &reports);

  for (size_t i = 0; i < results.size(); ++i) {
    const std::string out = instantiate_pattern(args.out, i, results.size());
    io::write_matrix_file_atomic(out, results[i].manifold, results[i].rep);
    const std::string report_path =
        args.report.empty()
            ? out + ".report"
            : instantiate_pattern(args.report, i, results.size());
    write_report(report_path, args.method, mus[i], samples, reports[i]);
  }
  return 0;
}

struct ExtrapolateArgs {
  std::string base, tangent;
  std::string snapshots, snapshots_dot;
  int rank = 0;
  double mu_star = 0.0;
  std::string out;
  std::string metric;
};

int cmd_extrapolate(const ExtrapolateArgs& args, RunConfig config) {
  const bool pod_mode = !args.snapshots.empty();
  if (pod_mode) {
    if (args.snapshots_dot.empty() || args.rank < 1)
      fail(ErrorCode::ParseError,
           "POD mode needs --snapshots, --snapshots-dot and --rank");
    const io::MatrixFile s = io::read_matrix_file(args.snapshots);
    const io::MatrixFile s_dot = io::read_matrix_file(args.snapshots_dot);
    const PodExtrapolation out =
        extrapolate_pod_basis(s.data, s_dot.data, args.rank, args.mu_star);
    io::write_matrix_file_atomic(args.out, ManifoldId::St, out.basis);
    if (out.tangency_repair > 0.0)
      std::cerr << "manifoldkit: note: truncation-induced tangency repair "
                << io::format_value(out.tangency_repair) << "\n";
    return 0;
  }
  if (args.base.empty() || args.tangent.empty())
    fail(ErrorCode::ParseError,
         "geodesic mode needs --base and --tangent (or use --snapshots)");
  const ManifoldPoint p = load_point(args.base, config);
  const TangentVector v = load_tangent(args.tangent, p, config);
  const ManifoldPoint q =
      extrapolate_geodesic(p, v, args.mu_star,
                           metric_from(args.metric.empty() ? config.metric
                                                           : args.metric));
  io::write_matrix_file_atomic(args.out, q.manifold, q.rep);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "manifoldkit: Riemannian exp/log/dist, interpolation and extrapolation "
      "on matrix manifolds (GL, On, SPD, St, Gr).\n"
      "Matrix files are text: '# manifold=<id> n=<rows> p=<cols>' followed "
      "by the rows (17 significant digits). Use manifold=raw for tangents "
      "and snapshot payloads.\n"
      "Set MANIFOLDKIT_CONFIG to a JSON file to change defaults."};
  app.require_subcommand(1);

  RunConfig config;
  try {
    config = load_config_from_env();
  } catch (const ManifoldError& err) {
    std::cerr << "manifoldkit: error [" << error_code_name(err.code())
              << "]: " << err.what() << "\n";
    return exit_code_for(err.code());
  }

  bool no_validate = false;
  app.add_flag("--no-validate", no_validate,
               "skip membership/tangency validation of input files");

  ExpArgs exp_args;
  auto* exp_cmd =
      app.add_subcommand("exp", "map a tangent file through the exponential");
  exp_cmd->add_option("--base", exp_args.base, "base point file")->required();
  exp_cmd->add_option("--tangent", exp_args.tangent, "tangent file (raw)")
      ->required();
  exp_cmd->add_option("--out", exp_args.out, "output point file")->required();
  exp_cmd->add_option("--metric", exp_args.metric,
                      "euclidean|canonical|natural|left_invariant");

  LogArgs log_args;
  auto* log_cmd = app.add_subcommand(
      "log", "tangent from base to target through the logarithm");
  log_cmd->add_option("--base", log_args.base, "base point file")->required();
  log_cmd->add_option("--target", log_args.target, "target point file")
      ->required();
  log_cmd->add_option("--out", log_args.out, "output tangent file (raw)")
      ->required();
  log_cmd->add_option("--metric", log_args.metric, "metric tag");

  DistArgs dist_args;
  auto* dist_cmd = app.add_subcommand(
      "dist", "Riemannian distance between two point files (stdout)");
  dist_cmd->add_option("--a", dist_args.a, "first point file")->required();
  dist_cmd->add_option("--b", dist_args.b, "second point file")->required();
  dist_cmd->add_option("--metric", dist_args.metric, "metric tag");

  InterpArgs interp_args;
  auto* interp_cmd = app.add_subcommand(
      "interp", "interpolate a sample manifest at one or more mu* values");
  interp_cmd
      ->add_option("--manifest", interp_args.manifest,
                   "lines of 'mu_1 [mu_2 ...] file'")
      ->required();
  interp_cmd
      ->add_option("--mu-star", interp_args.mu_stars,
                   "evaluation parameter (comma-separated for multi-d); "
                   "repeat for batch evaluation")
      ->required();
  interp_cmd->add_option("--method", interp_args.method,
                         "tangent|geodesic|karcher");
  interp_cmd
      ->add_option("--out", interp_args.out,
                   "output file; use '{}' as the index placeholder for "
                   "batch runs")
      ->required();
  interp_cmd->add_option("--report", interp_args.report,
                         "report path (default <out>.report)");
  interp_cmd->add_option("--scheme", config.scheme,
                         "weight scheme: linear|lagrange|rbf");
  interp_cmd->add_option("--rbf-kernel", config.rbf_kernel,
                         "gaussian|thin-plate");
  interp_cmd->add_option("--rbf-shape", config.rbf_shape,
                         "shape parameter of the gaussian kernel");
  interp_cmd->add_flag("--normalize-weights", config.normalize_weights,
                       "rescale weights to sum to one");
  interp_cmd->add_option("--base-index", config.base_index,
                         "base sample for the tangent method");
  interp_cmd->add_flag("--medoid", config.medoid,
                       "pick the base sample minimizing the maximum "
                       "distance to the others");
  interp_cmd->add_option("--tau", config.karcher_tau,
                         "Karcher gradient-norm threshold");
  interp_cmd->add_option("--max-iter", config.max_iter,
                         "Karcher iteration cap");
  interp_cmd->add_option("--metric", config.metric, "metric tag");
  interp_cmd->add_option("--jobs", config.jobs,
                         "evaluate mu* values on N threads (default 1)");

  ExtrapolateArgs extra_args;
  auto* extra_cmd = app.add_subcommand(
      "extrapolate",
      "geodesic extrapolation from (base, tangent), or POD-basis "
      "extrapolation from snapshots");
  extra_cmd->add_option("--base", extra_args.base, "base point file");
  extra_cmd->add_option("--tangent", extra_args.tangent,
                        "velocity file (raw)");
  extra_cmd->add_option("--snapshots", extra_args.snapshots,
                        "snapshot matrix file (raw)");
  extra_cmd->add_option("--snapshots-dot", extra_args.snapshots_dot,
                        "snapshot derivative file (raw)");
  extra_cmd->add_option("--rank", extra_args.rank, "POD truncation rank");
  extra_cmd->add_option("--mu-star", extra_args.mu_star, "step size")
      ->required();
  extra_cmd->add_option("--out", extra_args.out, "output file")->required();
  extra_cmd->add_option("--metric", extra_args.metric, "metric tag");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  config.validate = !no_validate;

  try {
    if (exp_cmd->parsed())
      return cmd_exp(exp_args, config);
    if (log_cmd->parsed())
      return cmd_log(log_args, config);
    if (dist_cmd->parsed())
      return cmd_dist(dist_args, config);
    if (interp_cmd->parsed())
      return cmd_interp(interp_args, config);
    if (extra_cmd->parsed())
      return cmd_extrapolate(extra_args, config);
  } catch (const ManifoldError& err) {
    std::cerr << "manifoldkit: error [" << error_code_name(err.code())
              << "]: " << err.what() << "\n";
    return exit_code_for(err.code());
  } catch (const std::exception& err) {
    std::cerr << "manifoldkit: error: " << err.what() << "\n";
    return 3;
  }
  return 0;
}

// Drives the installed CLI binary end to end: golden determinism, the
// exit-code contract and the documented pipelines. The binary path arrives
// in the MANIFOLDKIT_CLI environment variable (set by CTest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "manifoldkit/grassmann.hpp"
#include "manifoldkit/matrix_io.hpp"
#include "manifoldkit/spd.hpp"
#include "test_util.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace manifoldkit;

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
  const char* env = std::getenv("MANIFOLDKIT_CLI");
  REQUIRE_MESSAGE(env != nullptr,
                  "MANIFOLDKIT_CLI must point at the CLI binary");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() /
          ("manifoldkit_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  std::string file(const std::string& name) const {
    return (dir / name).string();
  }

  RunResult run(const std::string& args,
                const std::string& env_prefix = "") const {
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = env_prefix + cli_path() + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
  }
};

} // namespace

TEST_CASE("cli: dist of a file against itself prints zero") {
  Workspace ws;
  std::mt19937 gen(1201);
  const Matrix a = testutil::random_spd(4, gen);
  io::write_matrix_file(ws.file("a.mtx"), ManifoldId::SPD, a);
  const RunResult r =
      ws.run("dist --a " + ws.file("a.mtx") + " --b " + ws.file("a.mtx"));
  CHECK(r.exit_code == 0);
  CHECK(std::strtod(r.out.c_str(), nullptr) <= 1e-12);
}

TEST_CASE("cli: exp of the zero tangent reproduces the base point") {
  Workspace ws;
  std::mt19937 gen(1202);
  const Matrix u = testutil::random_stiefel(8, 3, gen);
  io::write_matrix_file(ws.file("u.mtx"), ManifoldId::St, u);
  io::write_matrix_file(ws.file("zero.mtx"), std::nullopt,
                        Matrix(Matrix::Zero(8, 3)));
  const RunResult r = ws.run("exp --base " + ws.file("u.mtx") + " --tangent " +
                             ws.file("zero.mtx") + " --out " +
                             ws.file("out.mtx"));
  CHECK(r.exit_code == 0);
  const Matrix out = io::read_matrix_file(ws.file("out.mtx")).data;
  CHECK((out - u).norm() <= 1e-12);
}

TEST_CASE("cli: log | exp pipeline reproduces the target file") {
  Workspace ws;
  std::mt19937 gen(1203);
  const Matrix a = testutil::random_spd(5, gen);
  Matrix dir = testutil::random_sym(5, gen);
  dir *= 0.4 / dir.norm();
  const Matrix b = spd::exp(a, dir);
  io::write_matrix_file(ws.file("a.mtx"), ManifoldId::SPD, a);
  io::write_matrix_file(ws.file("b.mtx"), ManifoldId::SPD, b);

  CHECK(ws.run("log --base " + ws.file("a.mtx") + " --target " +
               ws.file("b.mtx") + " --out " + ws.file("v.mtx"))
            .exit_code == 0);
  CHECK(ws.run("exp --base " + ws.file("a.mtx") + " --tangent " +
               ws.file("v.mtx") + " --out " + ws.file("b2.mtx"))
            .exit_code == 0);
  const Matrix b2 = io::read_matrix_file(ws.file("b2.mtx")).data;
  CHECK(spd::dist(b2, b) <= 1e-8);
}

namespace {

// three Grassmann samples on a geodesic plus the manifest that lists them
void write_gr_manifest(const Workspace& ws, std::mt19937& gen) {
  const Matrix u = testutil::random_stiefel(12, 3, gen);
  Matrix dir = testutil::random_gr_tangent(u, gen);
  dir *= 0.7 / dir.norm();
  int index = 0;
  std::ofstream manifest(ws.file("samples.txt"));
  for (double mu : {0.0, 0.5, 1.0}) {
    const std::string name = "s" + std::to_string(index++) + ".mtx";
    io::write_matrix_file(ws.file(name), ManifoldId::Gr,
                          grassmann::exp(u, Matrix(mu * dir)));
    manifest << mu << " " << ws.file(name) << "\n";
  }
}

} // namespace

TEST_CASE("cli: interp reproduces a node and writes a report") {
  Workspace ws;
  std::mt19937 gen(1204);
  write_gr_manifest(ws, gen);
  const RunResult r = ws.run("interp --manifest " + ws.file("samples.txt") +
                             " --mu-star 0.5 --method tangent --out " +
                             ws.file("node.mtx"));
  CHECK(r.exit_code == 0);
  const Matrix out = io::read_matrix_file(ws.file("node.mtx")).data;
  const Matrix node = io::read_matrix_file(ws.file("s1.mtx")).data;
  CHECK(grassmann::dist(out, node) <= 1e-7);

  const std::string report = slurp(ws.file("node.mtx.report"));
  CHECK(report.find("method=tangent") != std::string::npos);
  CHECK(report.find("base_index=0") != std::string::npos);
  CHECK(report.find("manifold=Gr") != std::string::npos);
}

TEST_CASE("cli: geodesic midpoint sits equidistant from two samples") {
  Workspace ws;
  std::mt19937 gen(1205);
  const Matrix u = testutil::random_stiefel(10, 2, gen);
  Matrix dir = testutil::random_gr_tangent(u, gen);
  dir *= 0.6 / dir.norm();
  const Matrix v = grassmann::exp(u, dir);
  io::write_matrix_file(ws.file("p0.mtx"), ManifoldId::Gr, u);
  io::write_matrix_file(ws.file("p1.mtx"), ManifoldId::Gr, v);
  {
    std::ofstream manifest(ws.file("pair.txt"));
    manifest << "0 " << ws.file("p0.mtx") << "\n";
    manifest << "1 " << ws.file("p1.mtx") << "\n";
  }
  const RunResult r = ws.run("interp --manifest " + ws.file("pair.txt") +
                             " --mu-star 0.5 --method geodesic --out " +
                             ws.file("mid.mtx"));
  CHECK(r.exit_code == 0);
  const Matrix mid = io::read_matrix_file(ws.file("mid.mtx")).data;
  CHECK(std::abs(grassmann::dist(mid, u) - grassmann::dist(mid, v)) <= 1e-8);
  CHECK(slurp(ws.file("mid.mtx.report")).find("segment=0") !=
        std::string::npos);
}

TEST_CASE("cli: karcher run reports a gradient norm within tau") {
  Workspace ws;
  std::mt19937 gen(1206);
  write_gr_manifest(ws, gen);
  const RunResult r = ws.run("interp --manifest " + ws.file("samples.txt") +
                             " --mu-star 0.4 --method karcher --tau 1e-9 "
                             "--out " +
                             ws.file("k.mtx"));
  CHECK(r.exit_code == 0);
  const std::string report = slurp(ws.file("k.mtx.report"));
  CHECK(report.find("method=karcher") != std::string::npos);
  const auto pos = report.find("gradient_norm=");
  REQUIRE(pos != std::string::npos);
  const double gnorm =
      std::strtod(report.c_str() + pos + std::string("gradient_norm=").size(),
                  nullptr);
  CHECK(gnorm <= 1e-9);
}

TEST_CASE("cli: batch interp over several mu* values with --jobs") {
  Workspace ws;
  std::mt19937 gen(1207);
  write_gr_manifest(ws, gen);
  const std::string args = "interp --manifest " + ws.file("samples.txt") +
                           " --mu-star 0.1 --mu-star 0.5 --mu-star 0.9 "
                           "--method geodesic --out " +
                           ws.file("batch_{}.mtx");
  CHECK(ws.run(args + " --jobs 2").exit_code == 0);
  for (int i = 0; i < 3; ++i) {
    CHECK(fs::exists(ws.file("batch_" + std::to_string(i) + ".mtx")));
    CHECK(fs::exists(ws.file("batch_" + std::to_string(i) + ".mtx.report")));
  }
  // serial rerun produces byte-identical files
  const std::string first = slurp(ws.file("batch_1.mtx"));
  CHECK(ws.run("interp --manifest " + ws.file("samples.txt") +
               " --mu-star 0.1 --mu-star 0.5 --mu-star 0.9 "
               "--method geodesic --out " +
               ws.file("again_{}.mtx"))
            .exit_code == 0);
  CHECK(slurp(ws.file("again_1.mtx")) == first);

  // multiple mu* without a placeholder is refused at parse level
  CHECK(ws.run("interp --manifest " + ws.file("samples.txt") +
               " --mu-star 0.1 --mu-star 0.2 --method geodesic --out " +
               ws.file("clash.mtx"))
            .exit_code == 2);
}

TEST_CASE("cli: scattered 2-d parameters with the rbf scheme") {
  Workspace ws;
  std::mt19937 gen(1214);
  const Matrix base = testutil::random_spd(4, gen);
  Matrix dir1 = testutil::random_sym(4, gen);
  dir1 *= 0.3 / dir1.norm();
  Matrix dir2 = testutil::random_sym(4, gen);
  dir2 *= 0.3 / dir2.norm();

  std::ofstream manifest(ws.file("grid.txt"));
  int index = 0;
  for (double x : {0.0, 1.0})
    for (double y : {0.0, 1.0}) {
      const std::string name = "q" + std::to_string(index++) + ".mtx";
      io::write_matrix_file(ws.file(name), ManifoldId::SPD,
                            spd::exp(base, Matrix(x * dir1 + y * dir2)));
      manifest << x << " " << y << " " << ws.file(name) << "\n";
    }
  manifest.close();

  // rbf weights reproduce the (1,0) node
  const RunResult r = ws.run("interp --manifest " + ws.file("grid.txt") +
                             " --mu-star 1,0 --method tangent --scheme rbf "
                             "--rbf-shape 0.9 --out " +
                             ws.file("node.mtx"));
  CHECK(r.exit_code == 0);
  const Matrix out = io::read_matrix_file(ws.file("node.mtx")).data;
  const Matrix node = io::read_matrix_file(ws.file("q2.mtx")).data;
  CHECK(spd::dist(out, node) <= 1e-7);

  // the 1-d scheme refuses scattered data with a domain error
  CHECK(ws.run("interp --manifest " + ws.file("grid.txt") +
               " --mu-star 1,0 --method tangent --scheme linear --out " +
               ws.file("x.mtx"))
            .exit_code == 3);
}

TEST_CASE("cli: golden determinism across repeated runs") {
  Workspace ws;
  std::mt19937 gen(1208);
  write_gr_manifest(ws, gen);
  const std::string args = "interp --manifest " + ws.file("samples.txt") +
                           " --mu-star 0.37 --method tangent --out ";
  CHECK(ws.run(args + ws.file("run1.mtx")).exit_code == 0);
  CHECK(ws.run(args + ws.file("run2.mtx")).exit_code == 0);
  CHECK(slurp(ws.file("run1.mtx")) == slurp(ws.file("run2.mtx")));
  CHECK(slurp(ws.file("run1.mtx")).size() > 0);
}

TEST_CASE("cli: extrapolate at mu* = 0 returns the base") {
  Workspace ws;
  std::mt19937 gen(1209);
  const Matrix u = testutil::random_stiefel(9, 3, gen);
  Matrix dir = testutil::random_st_tangent(u, gen);
  dir *= 0.5 / dir.norm();
  io::write_matrix_file(ws.file("u.mtx"), ManifoldId::St, u);
  io::write_matrix_file(ws.file("v.mtx"), std::nullopt, dir);
  const RunResult r = ws.run("extrapolate --base " + ws.file("u.mtx") +
                             " --tangent " + ws.file("v.mtx") +
                             " --mu-star 0 --out " + ws.file("out.mtx"));
  CHECK(r.exit_code == 0);
  CHECK((io::read_matrix_file(ws.file("out.mtx")).data - u).norm() <= 1e-12);
}

TEST_CASE("cli: POD extrapolation produces an orthonormal basis") {
  Workspace ws;
  std::mt19937 gen(1210);
  const Matrix u0 = testutil::random_stiefel(20, 5, gen);
  const Matrix z0 = testutil::random_stiefel(5, 5, gen);
  Vector sv(5);
  sv << 5.0, 3.1, 2.2, 1.4, 0.6;
  const Matrix s = u0 * sv.asDiagonal() * z0.transpose();
  const Matrix s_dot = testutil::gaussian(20, 5, gen);
  io::write_matrix_file(ws.file("s.mtx"), std::nullopt, s);
  io::write_matrix_file(ws.file("sdot.mtx"), std::nullopt, s_dot);
  const RunResult r =
      ws.run("extrapolate --snapshots " + ws.file("s.mtx") +
             " --snapshots-dot " + ws.file("sdot.mtx") +
             " --rank 3 --mu-star 0.2 --out " + ws.file("basis.mtx"));
  CHECK(r.exit_code == 0);
  const io::MatrixFile basis = io::read_matrix_file(ws.file("basis.mtx"));
  REQUIRE(basis.manifold.has_value());
  CHECK(*basis.manifold == ManifoldId::St);
  CHECK((basis.data.transpose() * basis.data - Matrix::Identity(3, 3))
            .norm() <= 1e-10);
}

TEST_CASE("cli: degenerate snapshot spectrum surfaces the index pair") {
  Workspace ws;
  std::mt19937 gen(1211);
  const Matrix u0 = testutil::random_stiefel(10, 3, gen);
  const Matrix z0 = testutil::random_stiefel(3, 3, gen);
  Vector sv(3);
  sv << 2.0, 2.0, 0.5; // exactly repeated
  const Matrix s = u0 * sv.asDiagonal() * z0.transpose();
  io::write_matrix_file(ws.file("s.mtx"), std::nullopt, s);
  io::write_matrix_file(ws.file("sdot.mtx"), std::nullopt,
                        testutil::gaussian(10, 3, gen));
  const RunResult r =
      ws.run("extrapolate --snapshots " + ws.file("s.mtx") +
             " --snapshots-dot " + ws.file("sdot.mtx") +
             " --rank 2 --mu-star 0.1 --out " + ws.file("basis.mtx"));
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("DegenerateSpectrum") != std::string::npos);
  CHECK(r.err.find("0") != std::string::npos);
  CHECK(r.err.find("1") != std::string::npos);
}

TEST_CASE("cli: exit-code contract") {
  Workspace ws;
  std::mt19937 gen(1212);

  // 2: parse failure (malformed header)
  {
    std::ofstream bad(ws.file("bad.mtx"));
    bad << "not a matrix file\n";
  }
  const Matrix a = testutil::random_spd(3, gen);
  io::write_matrix_file(ws.file("a.mtx"), ManifoldId::SPD, a);
  RunResult r =
      ws.run("dist --a " + ws.file("bad.mtx") + " --b " + ws.file("a.mtx"));
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("ParseError") != std::string::npos);

  // 2: unknown flag
  CHECK(ws.run("dist --nonsense").exit_code == 2);

  // 3: domain failure (membership violation)
  io::write_matrix_file(ws.file("notspd.mtx"), ManifoldId::SPD,
                        Matrix(-Matrix::Identity(3, 3)));
  r = ws.run("dist --a " + ws.file("notspd.mtx") + " --b " + ws.file("a.mtx"));
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("NotPositiveDefinite") != std::string::npos);

  // 3: domain failure (antipodal logarithm)
  Matrix half_turn = Matrix::Identity(3, 3);
  half_turn(0, 0) = -1.0;
  half_turn(1, 1) = -1.0;
  io::write_matrix_file(ws.file("id.mtx"), ManifoldId::On,
                        Matrix(Matrix::Identity(3, 3)));
  io::write_matrix_file(ws.file("pi.mtx"), ManifoldId::On, half_turn);
  r = ws.run("log --base " + ws.file("id.mtx") + " --target " +
             ws.file("pi.mtx") + " --out " + ws.file("v.mtx"));
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("AntipodalSpectrum") != std::string::npos);

  // 4: no convergence
  write_gr_manifest(ws, gen);
  r = ws.run("interp --manifest " + ws.file("samples.txt") +
             " --mu-star 0.4 --method karcher --tau 1e-30 --max-iter 2 "
             "--out " +
             ws.file("k.mtx"));
  CHECK(r.exit_code == 4);
  CHECK(r.err.find("NoConvergence") != std::string::npos);
}

TEST_CASE("cli: --no-validate admits off-manifold inputs") {
  Workspace ws;
  io::write_matrix_file(ws.file("notspd.mtx"), ManifoldId::SPD,
                        Matrix(-Matrix::Identity(3, 3)));
  io::write_matrix_file(ws.file("id.mtx"), ManifoldId::SPD,
                        Matrix(Matrix::Identity(3, 3)));
  // validation off: the file loads, the operation itself still reports the
  // domain violation
  const RunResult r = ws.run("--no-validate dist --a " +
                             ws.file("notspd.mtx") + " --b " +
                             ws.file("id.mtx"));
  CHECK(r.exit_code == 3);
}

TEST_CASE("cli: MANIFOLDKIT_CONFIG changes defaults and rejects bad files") {
  Workspace ws;
  std::mt19937 gen(1213);
  write_gr_manifest(ws, gen);

  {
    std::ofstream config(ws.file("config.json"));
    config << "{\"medoid\": true}\n";
  }
  const RunResult r =
      ws.run("interp --manifest " + ws.file("samples.txt") +
                 " --mu-star 0.5 --method tangent --out " + ws.file("m.mtx"),
             "MANIFOLDKIT_CONFIG=" + ws.file("config.json") + " ");
  CHECK(r.exit_code == 0);
  CHECK(slurp(ws.file("m.mtx.report")).find("base_index=1") !=
        std::string::npos);

  {
    std::ofstream config(ws.file("broken.json"));
    config << "{not json";
  }
  const RunResult bad =
      ws.run("dist --a x --b y",
             "MANIFOLDKIT_CONFIG=" + ws.file("broken.json") + " ");
  CHECK(bad.exit_code == 2);
}

// Compares the serial reference implementations of the batch kernels against
// the OpenMP-parallel ones on representative workloads and reports timings.

#include "manifoldkit/batch.hpp"
#include "manifoldkit/grassmann.hpp"
#include "manifoldkit/spd.hpp"
#include "manifoldkit/stiefel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <random>

using namespace manifoldkit;

namespace {

std::mt19937 gen(2024);

Matrix gaussian(int rows, int cols) {
  std::normal_distribution<double> dist;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = dist(gen);
  return m;
}

Matrix random_stiefel(int n, int p) { return thin_qr(gaussian(n, p)).q; }

Vector mu1(double x) {
  Vector v(1);
  v(0) = x;
  return v;
}

template <typename F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-38s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms);
}

void bench_grassmann_interp() {
  const int n = 200, p = 10;
  const Matrix u = random_stiefel(n, p);
  SampleSet set;
  Matrix dir = gaussian(n, p);
  dir -= u * (u.transpose() * dir);
  dir *= 0.8 / dir.norm();
  for (double mu : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    set.params.push_back(mu1(mu));
    set.points.push_back(
        make_point(ManifoldId::Gr, grassmann::exp(u, Matrix(mu * dir))));
  }
  std::vector<Vector> mus;
  for (int i = 0; i < 200; ++i)
    mus.push_back(mu1(i / 199.0));

  batch::InterpConfig config;
  config.method = batch::InterpMethod::Tangent;

  std::vector<ManifoldPoint> serial_out, parallel_out;
  const double serial_ms = time_ms([&] {
    serial_out = batch::interpolate_many(set, mus, config,
                                         batch::Exec::Serial);
  });
  const double parallel_ms = time_ms([&] {
    parallel_out = batch::interpolate_many(set, mus, config,
                                           batch::Exec::Parallel);
  });
  double max_diff = 0.0;
  for (size_t i = 0; i < mus.size(); ++i)
    max_diff = std::max(max_diff,
                        (serial_out[i].rep - parallel_out[i].rep).norm());
  report("grassmann tangent interp, 200 mu*", serial_ms, parallel_ms);
  std::printf("%-38s max |serial - parallel| = %g\n", "", max_diff);
}

void bench_spd_distance_matrix() {
  std::vector<ManifoldPoint> points;
  for (int i = 0; i < 96; ++i) {
    const Matrix b = gaussian(30, 30);
    points.push_back(make_point(
        ManifoldId::SPD,
        Matrix(b.transpose() * b + 30.0 * Matrix::Identity(30, 30))));
  }
  Matrix serial_out, parallel_out;
  const double serial_ms = time_ms([&] {
    serial_out =
        batch::distance_matrix(points, std::nullopt, batch::Exec::Serial);
  });
  const double parallel_ms = time_ms([&] {
    parallel_out =
        batch::distance_matrix(points, std::nullopt, batch::Exec::Parallel);
  });
  report("spd distance matrix, 96 points", serial_ms, parallel_ms);
  std::printf("%-38s max |serial - parallel| = %g\n", "",
              (serial_out - parallel_out).norm());
}

void bench_stiefel_geodesic_sweep() {
  const int n = 200, p = 20;
  const Matrix u = random_stiefel(n, p);
  Matrix delta = gaussian(n, p);
  const Matrix m = u.transpose() * delta;
  delta = u * skew_part(m) + (delta - u * m);
  delta *= 1.5 / delta.norm();
  const ManifoldPoint point = make_point(ManifoldId::St, u);
  const TangentVector v = make_tangent(point, delta);
  std::vector<double> ts;
  for (int i = 0; i < 400; ++i)
    ts.push_back(i / 399.0);

  std::vector<ManifoldPoint> serial_out, parallel_out;
  const double serial_ms = time_ms([&] {
    serial_out =
        batch::geodesic_many(point, v, ts, std::nullopt, batch::Exec::Serial);
  });
  const double parallel_ms = time_ms([&] {
    parallel_out = batch::geodesic_many(point, v, ts, std::nullopt,
                                        batch::Exec::Parallel);
  });
  double max_diff = 0.0;
  for (size_t i = 0; i < ts.size(); ++i)
    max_diff = std::max(max_diff,
                        (serial_out[i].rep - parallel_out[i].rep).norm());
  report("stiefel geodesic sweep, 400 t values", serial_ms, parallel_ms);
  std::printf("%-38s max |serial - parallel| = %g\n", "", max_diff);
}

} // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel path runs serially\n\n");
#endif
  bench_grassmann_interp();
  bench_spd_distance_matrix();
  bench_stiefel_geodesic_sweep();
  return 0;
}

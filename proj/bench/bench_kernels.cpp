#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "adaptmhd/exterior.hpp"
#include "adaptmhd/linalg3.hpp"
#include "adaptmhd/reference.hpp"
#include "adaptmhd/spectral.hpp"

using namespace adaptmhd;

namespace {

Array wave(const Grid3& g, double shift) {
  Array v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto ijk = g.unravel(i);
    const double z = g.coord(0, ijk[0]), t = g.coord(1, ijk[1]), p = g.coord(2, ijk[2]);
    v[i] = std::sin(z + shift) * std::cos(2 * t) + std::cos(p - shift) * std::sin(z - t);
  }
  return v;
}

VectorField field(const Grid3& g) { return VectorField(g, {wave(g, 0.1), wave(g, 0.7), wave(g, 1.3)}); }

MetricField metric(const Grid3& g) {
  std::array<Array, 6> c;
  for (int s = 0; s < 6; ++s) {
    c[s] = wave(g, 0.3 * s);
    const bool diag = s == 0 || s == 3 || s == 5;
    for (double& v : c[s]) v = (diag ? 1.5 : 0.0) + 0.1 * v;
  }
  return MetricField(g, std::move(c));
}

void BM_DerivativeFFT(benchmark::State& st) {
  const Grid3 g(static_cast<int>(st.range(0)));
  const ScalarField f(g, wave(g, 0.2));
  for (auto _ : st) benchmark::DoNotOptimize(partial_derivative(f, 1));
}

void BM_DerivativeReference(benchmark::State& st) {
  const Grid3 g(static_cast<int>(st.range(0)));
  const ScalarField f(g, wave(g, 0.2));
  for (auto _ : st) benchmark::DoNotOptimize(reference::partial_derivative(f, 1));
}

void BM_SolveParallel(benchmark::State& st) {
  const Grid3 g(static_cast<int>(st.range(0)));
  const MatrixField a = MatrixField::from_metric(metric(g));
  const VectorField b = field(g);
  for (auto _ : st) benchmark::DoNotOptimize(pointwise_solve3(a, b));
}

void BM_SolveReference(benchmark::State& st) {
  const Grid3 g(static_cast<int>(st.range(0)));
  const MatrixField a = MatrixField::from_metric(metric(g));
  const VectorField b = field(g);
  for (auto _ : st) benchmark::DoNotOptimize(reference::pointwise_solve3(a, b));
}

void BM_CurlKernel(benchmark::State& st) {
  const Grid3 g(static_cast<int>(st.range(0)));
  const MetricField id = MetricField::identity(g);
  const VolumeForm mu = VolumeForm::flat(g);
  const VectorField x = field(g);
  for (auto _ : st) benchmark::DoNotOptimize(curl(id, x, mu));
}

void BM_CurlReference(benchmark::State& st) {
  const Grid3 g(static_cast<int>(st.range(0)));
  const VectorField x = field(g);
  for (auto _ : st) benchmark::DoNotOptimize(reference::flat_curl(x));
}

void BM_InnerParallel(benchmark::State& st) {
  const Grid3 g(static_cast<int>(st.range(0)));
  const MetricField m = metric(g);
  const VectorField x = field(g);
  for (auto _ : st) benchmark::DoNotOptimize(inner(m, x, x));
}

void BM_InnerReference(benchmark::State& st) {
  const Grid3 g(static_cast<int>(st.range(0)));
  const MetricField m = metric(g);
  const VectorField x = field(g);
  for (auto _ : st) benchmark::DoNotOptimize(reference::inner(m, x, x));
}

}  // namespace

BENCHMARK(BM_DerivativeFFT)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_DerivativeReference)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_SolveParallel)->Arg(32)->Arg(64);
BENCHMARK(BM_SolveReference)->Arg(32)->Arg(64);
BENCHMARK(BM_CurlKernel)->Arg(32)->Arg(64);
BENCHMARK(BM_CurlReference)->Arg(32)->Arg(64);
BENCHMARK(BM_InnerParallel)->Arg(32)->Arg(64);
BENCHMARK(BM_InnerReference)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
